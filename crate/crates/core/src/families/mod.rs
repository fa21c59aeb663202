//! Constructors for the Cartan-type families, the Melikian algebra and the
//! classical controls.

mod classical;
mod contact;
mod hamiltonian;
mod melikian;
mod special;
mod witt;

use std::fmt;
use std::str::FromStr;

pub use classical::{build_classical, build_gl};
pub use contact::{build_k, contact_basis, d_k};
pub use hamiltonian::{build_h, d_h, hamiltonian_basis};
pub use melikian::{build_melikian, MelikianPart};
pub use special::{build_s, d_ij};
pub use witt::{build_w, w_power, DerivationOnA, WittIndex};

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::sparse::SpanSolver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    W,
    S,
    H,
    K,
    M,
    Sl,
    Psl,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::W => "W",
            Family::S => "S",
            Family::H => "H",
            Family::K => "K",
            Family::M => "M",
            Family::Sl => "sl",
            Family::Psl => "psl",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "W" | "w" => Family::W,
            "S" | "s" => Family::S,
            "H" | "h" => Family::H,
            "K" | "k" => Family::K,
            "M" | "m" => Family::M,
            "sl" | "SL" => Family::Sl,
            "psl" | "PSL" => Family::Psl,
            other => {
                return Err(Error::InvalidParameters(format!("unknown family '{other}'")))
            }
        })
    }
}

/// Family tag with its arity and characteristic. For `M` the arity is 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub p: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, p: u32) -> Self {
        FamilySpec { family, n, p }
    }

    /// Structural preconditions of the constructors.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if !crate::fp::is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        let n = self.n;
        match self.family {
            Family::Sl if n < 2 => bad("sl(n) needs n >= 2".into()),
            Family::Psl if n < 2 || !n.is_multiple_of(self.p as usize) => {
                bad(format!("psl({n}) needs p | n, and p = {} does not divide {n}", self.p))
            }
            Family::Sl | Family::Psl => Ok(()),
            _ if self.p < 5 => bad(format!("simple families need p >= 5, got {}", self.p)),
            Family::W if n < 1 => bad("W(n) needs n >= 1".into()),
            Family::S if n < 3 => bad("S(n) needs n >= 3".into()),
            Family::H if n < 2 || !n.is_multiple_of(2) => bad("H(n) needs even n >= 2".into()),
            Family::K if n < 3 || n % 2 != 1 => bad("K(n) needs odd n >= 3".into()),
            Family::M if self.p != 5 => bad("the Melikian algebra needs p = 5".into()),
            Family::M if n != 2 => bad("the Melikian algebra is built over A(2)".into()),
            _ => Ok(()),
        }
    }

    /// Whether the spec lies in the grid the constructors are tuned for.
    pub fn in_supported_grid(&self) -> bool {
        if self.validate().is_err() {
            return false;
        }
        let p_ok = self.p == 5 || self.p == 7;
        match self.family {
            Family::W => p_ok && self.n <= 3,
            Family::S => p_ok && self.n == 3,
            Family::H => p_ok && (self.n == 2 || self.n == 4),
            Family::K => p_ok && (self.n == 3 || (self.n == 5 && self.p == 5)),
            Family::M => true,
            Family::Sl | Family::Psl => p_ok && self.n <= 5,
        }
    }

    /// Dimension predicted by the closed formulas.
    pub fn expected_dim(&self) -> usize {
        let p = self.p as usize;
        let pn = p.pow(self.n as u32);
        match self.family {
            Family::W => self.n * pn,
            Family::S => (self.n - 1) * (pn - 1),
            Family::H => pn - 2,
            Family::K => {
                let m = (self.n - 1) / 2;
                if (m + 2).is_multiple_of(p) {
                    pn - 1
                } else {
                    pn
                }
            }
            Family::M => 125,
            Family::Sl => self.n * self.n - 1,
            Family::Psl => self.n * self.n - 2,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::M => format!("M(p={})", self.p),
            Family::Sl | Family::Psl => format!("{}({}, p={})", self.family, self.n, self.p),
            f => format!("{}({}, p={})", f, self.n, self.p),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Build any family from its spec.
pub fn build(spec: FamilySpec) -> Result<LieAlgebra> {
    spec.validate()?;
    match spec.family {
        Family::W => build_w(spec.n, spec.p),
        Family::S => build_s(spec.n, spec.p),
        Family::H => build_h(spec.n, spec.p),
        Family::K => build_k(spec.n, spec.p),
        Family::M => build_melikian(spec.p),
        Family::Sl | Family::Psl => build_classical(spec.family, spec.n, spec.p),
    }
}

/// Coordinates of `target` over `vectors`, or `None` when it lies outside
/// their span. Dependent inputs receive coordinate zero.
pub fn express_in_span(l: &LieAlgebra, vectors: &[Element], target: &Element) -> Result<Option<Vec<u32>>> {
    if vectors.iter().chain(std::iter::once(target)).any(|v| v.parent() != l.id()) {
        return Err(Error::ParentMismatch);
    }
    let sparse: Vec<SparseVec> = vectors.iter().map(|v| v.to_sparse()).collect();
    let mut solver = SpanSolver::new(l.field(), l.dim(), sparse.iter());
    Ok(solver.express(&target.to_sparse()).map(|combo| {
        let mut out = vec![0; vectors.len()];
        for (g, c) in combo {
            out[g as usize] = c;
        }
        out
    }))
}

/// Re-express brackets of embedded basis vectors in the basis itself.
///
/// `basis` holds ambient coordinates of the chosen basis; `bracket` computes
/// ambient brackets. Returns the structure table, or a construction error
/// naming the first pair whose bracket leaves the span.
pub(crate) fn table_from_embedding(
    field: crate::fp::Field,
    ambient: usize,
    basis: &[SparseVec],
    labels: &[String],
    mut bracket: impl FnMut(&[(u32, u32)], &[(u32, u32)]) -> SparseVec,
) -> Result<crate::algebra::TableBuilder> {
    let mut solver = SpanSolver::new(field, ambient, basis.iter());
    if solver.rank() != basis.len() {
        return Err(Error::Construction("embedded basis is linearly dependent".into()));
    }
    let mut table = crate::algebra::TableBuilder::new(field, basis.len());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let w = bracket(&basis[i], &basis[j]);
            if w.is_empty() {
                continue;
            }
            let Some(coords) = solver.express(&w) else {
                return Err(Error::Construction(format!(
                    "bracket [{}, {}] leaves the span of the basis",
                    labels[i], labels[j]
                )));
            };
            table.set(i, j, coords)?;
        }
    }
    Ok(table)
}

/// p-map table inherited from `D -> D^p` on W(n), when every basis power
/// lands back in the span of the embedded basis.
pub(crate) fn p_map_from_embedding(idx: &WittIndex, field: crate::fp::Field, basis: &[SparseVec]) -> Option<Vec<SparseVec>> {
    let mut solver = SpanSolver::new(field, idx.dim(), basis.iter());
    basis
        .iter()
        .map(|v| {
            let d = DerivationOnA::from_w_coords(idx, field, v);
            let pw = d.power(idx.p).ok()?.to_w_coords(idx);
            solver.express(&pw)
        })
        .collect()
}
