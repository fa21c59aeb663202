//! The JSON algebra file.

use serde::{Deserialize, Serialize};

use cartan_core::algebra::{Grading, LieAlgebra, TableBuilder};
use cartan_core::families::{Family, FamilySpec};
use cartan_core::{Error, Field, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub family: String,
    pub n: usize,
}

/// Serialized structure constants. Brackets are stored for `i < j` only,
/// coefficients as least nonnegative residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub schema: u32,
    pub name: String,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    pub brackets: Vec<(u32, u32, Vec<(u32, u32)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_map: Option<Vec<(u32, Vec<(u32, u32)>)>>,
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let d = l.dim();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = l.stored_bracket(i, j);
                if !v.is_empty() {
                    brackets.push((i as u32, j as u32, v.to_vec()));
                }
            }
        }
        AlgebraFile {
            schema: SCHEMA_VERSION,
            name: l.name().to_string(),
            p: l.p(),
            params: l.family().map(|s| Params {
                family: s.family.tag().to_string(),
                n: s.n,
            }),
            dim: d,
            basis_labels: l.labels().to_vec(),
            grading: l.grading().map(|g| g.weights.clone()),
            brackets,
            p_map: l.p_map().map(|t| {
                t.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_empty())
                    .map(|(i, v)| (i as u32, v.clone()))
                    .collect()
            }),
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameters(format!("parse error at line {}, column {}: {e}", e.line(), e.column())))
    }

    fn check_vec(&self, what: &str, v: &[(u32, u32)]) -> Result<()> {
        let mut last = None;
        for &(k, c) in v {
            if k as usize >= self.dim {
                return Err(Error::InvalidParameters(format!("{what}: index {k} out of range for dimension {}", self.dim)));
            }
            if c == 0 || c >= self.p {
                return Err(Error::InvalidParameters(format!("{what}: coefficient {c} not in [1, {})", self.p)));
            }
            if last.is_some_and(|l| l >= k) {
                return Err(Error::InvalidParameters(format!("{what}: indices not strictly increasing")));
            }
            last = Some(k);
        }
        Ok(())
    }

    /// Rebuild the algebra, validating every field.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidParameters(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let field = Field::new(self.p)?;
        if self.basis_labels.len() != self.dim {
            return Err(Error::InvalidParameters(format!(
                "{} basis labels for dimension {}",
                self.basis_labels.len(),
                self.dim
            )));
        }
        let mut table = TableBuilder::new(field, self.dim);
        for (i, j, v) in &self.brackets {
            let what = format!("bracket [{i}, {j}]");
            if i >= j || *j as usize >= self.dim {
                return Err(Error::InvalidParameters(format!("{what}: need i < j < {}", self.dim)));
            }
            self.check_vec(&what, v)?;
            table.set(*i as usize, *j as usize, v.clone())?;
        }
        let mut l = LieAlgebra::new(self.name.clone(), field, self.basis_labels.clone(), table)?;
        if let Some(g) = &self.grading {
            if g.len() != self.dim {
                return Err(Error::InvalidParameters(format!("grading has {} weights for dimension {}", g.len(), self.dim)));
            }
            l.set_grading(Some(Grading::new(g.clone())));
        }
        if let Some(pm) = &self.p_map {
            let mut t = vec![Vec::new(); self.dim];
            for (i, v) in pm {
                let what = format!("p_map entry {i}");
                if *i as usize >= self.dim {
                    return Err(Error::InvalidParameters(format!("{what}: index out of range")));
                }
                self.check_vec(&what, v)?;
                t[*i as usize] = v.clone();
            }
            l.set_p_map(Some(t));
        }
        if let Some(pr) = &self.params {
            let family: Family = pr.family.parse()?;
            l.set_family(Some(FamilySpec::new(family, pr.n, self.p)));
        }
        Ok(l)
    }
}

/// Field-by-field equality of two algebras (identity tokens excluded).
pub fn same_algebra(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.name() == b.name()
        && a.p() == b.p()
        && a.labels() == b.labels()
        && a.same_table(b)
        && a.grading().map(|g| &g.weights) == b.grading().map(|g| &g.weights)
        && a.p_map() == b.p_map()
        && a.family() == b.family()
}
