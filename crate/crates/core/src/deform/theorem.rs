//! End-to-end check of a theorem: listed classes, their span, and `H^2`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::algebra::LieAlgebra;
use crate::cohomology::{class_span_dim, h_dim, is_cocycle, BlockKey, BlockWeights, CohomologyOptions, CohomologyReport};
use crate::error::Result;
use crate::families::{build, Family, FamilySpec};

use super::cocycles::theorem_cocycles;

/// Number of classes the theorem lists for a family.
pub fn listed_count(spec: &FamilySpec) -> usize {
    let n = spec.n;
    match spec.family {
        Family::W => n,
        Family::S => n + 1,
        Family::H if n == 2 => 3,
        // 2m Sq + (C(2m,2) - m) Pi_ij + m Pi_i + Phi
        Family::H => n + n * (n - 1) / 2 + 1,
        Family::K => n,
        Family::M => 5,
        Family::Sl | Family::Psl => 0,
    }
}

#[derive(Clone, Debug)]
pub struct ClassCheck {
    pub name: String,
    pub nnz: usize,
    pub cocycle: bool,
    /// Lattice weights of the blocks the cochain touches.
    pub blocks: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub spec: FamilySpec,
    pub dim: usize,
    pub listed: usize,
    pub classes: Vec<ClassCheck>,
    /// `None` when some listed cochain is not closed.
    pub span: Option<usize>,
    /// Total `H^2`; `None` when some block ran over budget.
    pub h2: Option<usize>,
    /// `H^2` summed over the blocks that contain a listed class.
    pub h2_class_blocks: usize,
    pub cohomology: CohomologyReport,
    pub build_time: Duration,
    pub cocycle_time: Duration,
    pub h2_time: Duration,
}

impl TheoremReport {
    pub fn matched(&self) -> bool {
        self.span == Some(self.listed) && self.h2 == Some(self.listed)
    }

    /// `(lattice weight, principal weight, h2)` for every block carrying classes.
    pub fn provenance(&self) -> Vec<(Vec<i64>, Option<i64>, usize)> {
        self.cohomology
            .nonzero_blocks()
            .map(|b| (b.lattice.clone(), b.weight, b.h2))
            .collect()
    }
}

/// Build the algebra of `spec` and check its theorem.
pub fn verify_theorem(spec: FamilySpec, opts: &CohomologyOptions) -> Result<TheoremReport> {
    let t0 = Instant::now();
    let l = build(spec)?;
    let build_time = t0.elapsed();
    verify_theorem_on(&l, spec, opts, build_time)
}

/// As [`verify_theorem`] on an already constructed algebra.
pub fn verify_theorem_on(l: &LieAlgebra, spec: FamilySpec, opts: &CohomologyOptions, build_time: Duration) -> Result<TheoremReport> {
    let t1 = Instant::now();
    let listed = theorem_cocycles(l)?;
    let bw = BlockWeights::refined(l)?;
    let mut classes = Vec::new();
    let mut keys: BTreeSet<BlockKey> = BTreeSet::new();
    for c in &listed {
        let mut own: BTreeSet<BlockKey> = BTreeSet::new();
        for (tuple, t, _) in c.cochain.iter() {
            own.insert(bw.key(&tuple, t));
        }
        keys.extend(own.iter().copied());
        classes.push(ClassCheck {
            name: c.name.clone(),
            nnz: c.cochain.nnz(),
            cocycle: is_cocycle(l, &c.cochain)?.is_cocycle(),
            blocks: own.iter().map(|k| bw.lattice_weight(k)).collect(),
        });
    }
    let span = if classes.iter().all(|c| c.cocycle) {
        let cs: Vec<_> = listed.iter().map(|c| c.cochain.clone()).collect();
        Some(class_span_dim(l, &cs)?)
    } else {
        None
    };
    let cocycle_time = t1.elapsed();
    let t2 = Instant::now();
    let cohomology = h_dim(l, 2, opts)?;
    let h2_time = t2.elapsed();
    let h2 = cohomology.complete.then_some(cohomology.h_dim);
    let h2_class_blocks = cohomology
        .blocks
        .iter()
        .filter(|b| keys.contains(&b.key))
        .map(|b| b.h2)
        .sum();
    Ok(TheoremReport {
        spec,
        dim: l.dim(),
        listed: listed_count(&spec),
        classes,
        span,
        h2,
        h2_class_blocks,
        cohomology,
        build_time,
        cocycle_time,
        h2_time,
    })
}
