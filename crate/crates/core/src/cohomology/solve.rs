//! Coboundary solving and the dimension of a span of classes.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::sparse::{SparseEchelon, SpanSolver};

use super::blocks::{BlockKey, BlockWeights};
use super::cochain::{decode, encode, Cochain};
use super::differential::{is_cocycle, merge_entries, DiffContext};

/// A linear functional on `C^2` vanishing on `im d1` but not on the cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Coefficients on packed `C^2` keys.
    pub functional: Vec<(u64, u32)>,
    /// Its value on the cochain (nonzero).
    pub value: u32,
}

#[derive(Clone, Debug)]
pub enum CoboundaryResult {
    /// `phi` with `d phi = c`.
    Coboundary(Cochain),
    NotCoboundary(Certificate),
}

/// `d1` images of one block with columns keyed on demand.
struct BlockImage {
    c1: Vec<u64>,
    cols: HashMap<u64, u32>,
    keys: Vec<u64>,
    solver: SpanSolver,
}

impl BlockImage {
    fn new(ctx: &DiffContext, bw: &BlockWeights, key: BlockKey) -> Self {
        let l = ctx.algebra();
        let d = l.dim() as u32;
        let f = l.field();
        let mut img = BlockImage {
            c1: Vec::new(),
            cols: HashMap::new(),
            keys: Vec::new(),
            solver: SpanSolver::new(f, 0, std::iter::empty()),
        };
        let mut buf = Vec::new();
        for a in 0..d {
            for t in 0..d {
                if bw.key(&[a], t) != key {
                    continue;
                }
                img.c1.push(encode(d as usize, &[a], t));
                buf.clear();
                ctx.d1_basis(a, t, 1, &mut buf);
                merge_entries(f, &mut buf);
                let v = img.local(&buf);
                img.solver.add_generator(&v);
            }
        }
        img
    }

    fn local(&mut self, v: &[(u64, u32)]) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .map(|&(k, c)| {
                let n = self.keys.len() as u32;
                let i = *self.cols.entry(k).or_insert(n);
                if i == n {
                    self.keys.push(k);
                }
                (i, c)
            })
            .collect();
        self.solver.grow(self.keys.len());
        out.sort_unstable();
        out
    }

    fn global(&self, v: &[(u32, u32)]) -> Vec<(u64, u32)> {
        v.iter().map(|&(i, c)| (self.keys[i as usize], c)).collect()
    }
}

/// Split a cochain's entries by block key.
fn split(bw: &BlockWeights, c: &Cochain) -> BTreeMap<BlockKey, Vec<(u64, u32)>> {
    let mut out: BTreeMap<BlockKey, Vec<(u64, u32)>> = BTreeMap::new();
    for (&k, &v) in c.entries() {
        let (tuple, t) = decode(c.dim(), c.degree(), k);
        out.entry(bw.key(&tuple, t)).or_default().push((k, v));
    }
    out
}

fn check_two_cochain(l: &LieAlgebra, c: &Cochain) -> Result<()> {
    if c.parent() != l.id() {
        return Err(Error::ParentMismatch);
    }
    if c.degree() != 2 {
        return Err(Error::UnsupportedDegree(c.degree()));
    }
    Ok(())
}

/// Solve `d phi = c` inside the weight blocks touched by `c`.
pub fn coboundary_solve(l: &LieAlgebra, c: &Cochain) -> Result<CoboundaryResult> {
    check_two_cochain(l, c)?;
    let bw = BlockWeights::refined(l)?;
    let ctx = DiffContext::new(l);
    let mut phi = Cochain::zero(l, 1);
    for (key, part) in split(&bw, c) {
        let mut img = BlockImage::new(&ctx, &bw, key);
        let target = img.local(&part);
        match img.solver.express(&target) {
            Some(combo) => {
                for (g, x) in combo {
                    phi.add_key(img.c1[g as usize], x);
                }
            }
            None => {
                let residual = img.solver.residual(&target);
                let (q, value) = residual[0];
                // y(v) = (reduce v)_q: linear, zero on the row space
                let mut functional = vec![(img.keys[q as usize], 1u32)];
                for col in 0..img.keys.len() as u32 {
                    if col == q {
                        continue;
                    }
                    let r = img.solver.residual(&[(col, 1)]);
                    if let Some(&(_, y)) = r.iter().find(|e| e.0 == q) {
                        functional.push((img.keys[col as usize], y));
                    }
                }
                functional.sort_unstable();
                debug_assert_ne!(value, 0);
                return Ok(CoboundaryResult::NotCoboundary(Certificate { functional, value }));
            }
        }
    }
    Ok(CoboundaryResult::Coboundary(phi))
}

/// Check a negative certificate independently: the functional must vanish
/// on `d1` of every basis 1-cochain and take the stated nonzero value on `c`.
pub fn verify_certificate(l: &LieAlgebra, c: &Cochain, cert: &Certificate) -> Result<bool> {
    check_two_cochain(l, c)?;
    let f = l.field();
    let y: HashMap<u64, u32> = cert.functional.iter().copied().collect();
    let dot = |v: &[(u64, u32)]| {
        v.iter()
            .fold(0u32, |s, (k, x)| y.get(k).map_or(s, |&yk| f.add(s, f.mul(yk, *x))))
    };
    let cv: Vec<(u64, u32)> = c.entries().iter().map(|(&k, &v)| (k, v)).collect();
    let val = dot(&cv);
    if val == 0 || val != cert.value {
        return Ok(false);
    }
    let ctx = DiffContext::new(l);
    let d = l.dim() as u32;
    let mut buf = Vec::new();
    for a in 0..d {
        for t in 0..d {
            buf.clear();
            ctx.d1_basis(a, t, 1, &mut buf);
            merge_entries(f, &mut buf);
            if dot(&buf) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimension of the span of the classes of the given cocycles in `H^2`.
pub fn class_span_dim(l: &LieAlgebra, cocycles: &[Cochain]) -> Result<usize> {
    for (i, c) in cocycles.iter().enumerate() {
        check_two_cochain(l, c)?;
        if let Some((tuple, t, v)) = is_cocycle(l, c)?.witness {
            return Err(Error::NotCocycle(format!(
                "input {i}: d c is {v} at ({}; {})",
                tuple.iter().map(|&x| l.label(x as usize)).collect::<Vec<_>>().join(", "),
                l.label(t as usize)
            )));
        }
    }
    let bw = BlockWeights::refined(l)?;
    let ctx = DiffContext::new(l);
    let parts: Vec<BTreeMap<BlockKey, Vec<(u64, u32)>>> = cocycles.iter().map(|c| split(&bw, c)).collect();
    let mut keys: Vec<BlockKey> = parts.iter().flat_map(|p| p.keys().copied()).collect();
    keys.sort_unstable();
    keys.dedup();
    // residual of each cocycle modulo im d1, block by block
    let mut residuals: Vec<Vec<(u64, u32)>> = vec![Vec::new(); cocycles.len()];
    for key in keys {
        let mut img = BlockImage::new(&ctx, &bw, key);
        for (i, p) in parts.iter().enumerate() {
            if let Some(v) = p.get(&key) {
                let lv = img.local(v);
                let r = img.solver.residual(&lv);
                residuals[i].extend(img.global(&r));
            }
        }
    }
    let mut cols: HashMap<u64, u32> = HashMap::new();
    let local: Vec<SparseVec> = residuals
        .iter()
        .map(|r| {
            let mut v: SparseVec = r
                .iter()
                .map(|&(k, c)| {
                    let n = cols.len() as u32;
                    (*cols.entry(k).or_insert(n), c)
                })
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut ech = SparseEchelon::new(l.field(), cols.len());
    for v in &local {
        ech.insert(v);
    }
    Ok(ech.rank())
}
