//! Exact sparse elimination over F_p.
//!
//! [`SparseEchelon`] is a streaming echelon form: rows are inserted one at a
//! time, each new row is reduced against the existing pivots and, if anything
//! survives, a pivot is picked among its entries. Pivot choice follows a
//! Markowitz-style rule (lowest static column weight, ties to the lowest
//! column index), which keeps fill-in down on the structured matrices
//! produced by the cochain differentials.
//!
//! Row `k` is zero at the pivot columns of rows `0..k`, so the stored rows are
//! triangular in insertion order; reduction processes pivots in that order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::fp::Field;
use crate::linalg::SparseVec;

const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct SparseEchelon {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_cols: Vec<u32>,
    col_to_row: Vec<u32>,
    col_weight: Option<Vec<u32>>,
    work: Vec<u64>,
    touched: Vec<u32>,
    queued: Vec<bool>,
    stored_entries: usize,
}

/// Outcome of reducing a vector: the residual and the multiples of each
/// stored row that were subtracted.
pub struct Reduction {
    pub residual: SparseVec,
    pub used: Vec<(u32, u32)>,
}

impl SparseEchelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        SparseEchelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            col_to_row: vec![NONE; ncols],
            col_weight: None,
            work: vec![0; ncols],
            touched: Vec::new(),
            queued: Vec::new(),
            stored_entries: 0,
        }
    }

    /// Static column weights for pivot selection (e.g. column counts).
    pub fn with_column_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.ncols);
        self.col_weight = Some(weights);
        self
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Enlarge the column range; new columns get weight zero.
    pub fn grow(&mut self, ncols: usize) {
        if ncols <= self.ncols {
            return;
        }
        self.ncols = ncols;
        self.col_to_row.resize(ncols, NONE);
        self.work.resize(ncols, 0);
        if let Some(w) = &mut self.col_weight {
            w.resize(ncols, 0);
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivot_cols
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.col_to_row[col as usize] != NONE
    }

    pub fn row(&self, k: usize) -> &[(u32, u32)] {
        &self.rows[k]
    }

    /// Total stored nonzeros, a fill-in gauge.
    pub fn stored_entries(&self) -> usize {
        self.stored_entries
    }

    fn reduce_inner(&mut self, v: &[(u32, u32)], trace: bool) -> Reduction {
        let p = self.field.p() as u64;
        if self.queued.len() < self.rows.len() {
            self.queued.resize(self.rows.len(), false);
        }
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for &(c, x) in v {
            debug_assert!((c as usize) < self.ncols);
            if self.work[c as usize] == 0 {
                self.touched.push(c);
            }
            self.work[c as usize] += x as u64;
            let r = self.col_to_row[c as usize];
            if r != NONE && !self.queued[r as usize] {
                self.queued[r as usize] = true;
                heap.push(Reverse(r));
            }
        }
        let mut used = Vec::new();
        while let Some(Reverse(k)) = heap.pop() {
            self.queued[k as usize] = false;
            let pc = self.pivot_cols[k as usize] as usize;
            let val = (self.work[pc] % p) as u32;
            self.work[pc] = 0;
            if val == 0 {
                continue;
            }
            if trace {
                used.push((k, val));
            }
            let m = p - val as u64;
            // skip the pivot itself (normalized to 1, already cleared)
            for &(c, x) in &self.rows[k as usize][..] {
                let cu = c as usize;
                if cu == pc {
                    continue;
                }
                if self.work[cu] == 0 {
                    self.touched.push(c);
                }
                // values stay far below 2^64: each add is < p^2
                self.work[cu] += m * x as u64 + p;
                let r = self.col_to_row[cu];
                if r != NONE && !self.queued[r as usize] {
                    self.queued[r as usize] = true;
                    heap.push(Reverse(r));
                }
            }
        }
        let mut residual = Vec::new();
        self.touched.sort_unstable();
        self.touched.dedup();
        for &c in &self.touched {
            let val = (self.work[c as usize] % p) as u32;
            self.work[c as usize] = 0;
            if val != 0 {
                debug_assert_eq!(self.col_to_row[c as usize], NONE);
                residual.push((c, val));
            }
        }
        self.touched.clear();
        Reduction { residual, used }
    }

    /// Residual of `v` modulo the row space; zero iff `v` is in the span.
    pub fn reduce(&mut self, v: &[(u32, u32)]) -> SparseVec {
        self.reduce_inner(v, false).residual
    }

    pub fn reduce_traced(&mut self, v: &[(u32, u32)]) -> Reduction {
        self.reduce_inner(v, true)
    }

    fn choose_pivot(&self, residual: &[(u32, u32)]) -> usize {
        match &self.col_weight {
            None => 0,
            Some(w) => {
                let mut best = 0;
                for (i, &(c, _)) in residual.iter().enumerate() {
                    let (bc, _) = residual[best];
                    if (w[c as usize], c) < (w[bc as usize], bc) {
                        best = i;
                    }
                }
                best
            }
        }
    }

    /// Store an already reduced, nonzero residual as a new row.
    fn push_residual(&mut self, mut residual: SparseVec) -> (u32, u32) {
        let f = self.field;
        let at = self.choose_pivot(&residual);
        let (pc, pv) = residual[at];
        let inv = f.inv(pv);
        for e in residual.iter_mut() {
            e.1 = f.mul(e.1, inv);
        }
        let k = self.rows.len() as u32;
        self.col_to_row[pc as usize] = k;
        self.pivot_cols.push(pc);
        self.stored_entries += residual.len();
        self.rows.push(residual);
        self.queued.push(false);
        (pc, inv)
    }

    /// Insert a row; returns the new pivot column when the rank grew.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> Option<u32> {
        let residual = self.reduce(v);
        if residual.is_empty() {
            return None;
        }
        Some(self.push_residual(residual).0)
    }

    /// Basis of the right kernel `{x : row . x = 0 for every stored row}`,
    /// one vector per non-pivot column, stopping after `limit` vectors.
    pub fn nullspace(&self, limit: usize) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.col_to_row[free] != NONE {
                continue;
            }
            if out.len() == limit {
                break;
            }
            let mut x = vec![0u32; self.ncols];
            x[free] = 1;
            for k in (0..self.rows.len()).rev() {
                let pc = self.pivot_cols[k] as usize;
                let mut s = 0u32;
                for &(c, v) in &self.rows[k] {
                    if c as usize != pc && x[c as usize] != 0 {
                        s = f.add(s, f.mul(v, x[c as usize]));
                    }
                }
                x[pc] = f.neg(s);
            }
            out.push(x);
        }
        out
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }
}

/// Span solver: expresses targets as combinations of a fixed list of
/// generating vectors, or certifies that a target lies outside their span.
#[derive(Clone)]
pub struct SpanSolver {
    echelon: SparseEchelon,
    combos: Vec<SparseVec>,
    generators: usize,
    independent: Vec<bool>,
    dependencies: Vec<SparseVec>,
}

impl SpanSolver {
    pub fn new<'a>(field: Field, ncols: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut solver = SpanSolver {
            echelon: SparseEchelon::new(field, ncols),
            combos: Vec::new(),
            generators: 0,
            independent: Vec::new(),
            dependencies: Vec::new(),
        };
        for v in vectors {
            solver.push(v);
        }
        solver
    }

    /// Enlarge the column range.
    pub fn grow(&mut self, ncols: usize) {
        self.echelon.grow(ncols);
    }

    /// Append one more generator.
    pub fn add_generator(&mut self, v: &SparseVec) {
        self.push(v);
    }

    fn push(&mut self, v: &SparseVec) {
        let f = self.echelon.field;
        let idx = self.generators as u32;
        self.generators += 1;
        let red = self.echelon.reduce_traced(v);
        // v - sum used_k * row_k, over the generators
        let mut acc: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
        acc.insert(idx, 1);
        for &(k, m) in &red.used {
            for &(g, c) in &self.combos[k as usize] {
                let e = acc.entry(g).or_insert(0);
                *e = f.sub(*e, f.mul(m, c));
            }
        }
        if red.residual.is_empty() {
            self.independent.push(false);
            self.dependencies.push(acc.into_iter().filter(|&(_, c)| c != 0).collect());
            return;
        }
        self.independent.push(true);
        let (_, inv) = self.echelon.push_residual(red.residual);
        let combo = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(g, c)| (g, f.mul(c, inv)))
            .collect();
        self.combos.push(combo);
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// One linear relation among the generators for each dependent
    /// generator, in insertion order; each ends with coefficient 1 on the
    /// dependent generator itself.
    pub fn dependencies(&self) -> &[SparseVec] {
        &self.dependencies
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Whether generator `i` was independent of the ones before it.
    pub fn is_independent(&self, i: usize) -> bool {
        self.independent[i]
    }

    /// Coefficients over the generators, or `None` when outside the span.
    pub fn express(&mut self, target: &[(u32, u32)]) -> Option<SparseVec> {
        let f = self.echelon.field;
        let red = self.echelon.reduce_traced(target);
        if !red.residual.is_empty() {
            return None;
        }
        let mut acc: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
        for &(k, m) in &red.used {
            for &(g, c) in &self.combos[k as usize] {
                let e = acc.entry(g).or_insert(0);
                *e = f.add(*e, f.mul(m, c));
            }
        }
        Some(acc.into_iter().filter(|&(_, c)| c != 0).collect())
    }

    pub fn residual(&mut self, target: &[(u32, u32)]) -> SparseVec {
        self.echelon.reduce(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dense_to_sparse, DenseMatrix};
    use rand::{Rng, SeedableRng};

    fn random_sparse(rng: &mut impl Rng, n: usize, density: f64, p: u32) -> SparseVec {
        (0..n as u32)
            .filter_map(|i| {
                if rng.random_bool(density) {
                    Some((i, rng.random_range(1..p)))
                } else {
                    None
                }
            })
            .collect()
    }

    #[test]
    fn rank_matches_dense_elimination() {
        let f = Field::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let (m, n) = (rng.random_range(1..25), rng.random_range(1..25));
            let rows: Vec<SparseVec> = (0..m).map(|_| random_sparse(&mut rng, n, 0.2, 5)).collect();
            let dense: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| crate::linalg::sparse_to_dense(r, n))
                .collect();
            let weights = (0..n as u32).map(|c| (c * 7 + trial) % 5).collect();
            let mut ech = SparseEchelon::new(f, n).with_column_weights(weights);
            for r in &rows {
                ech.insert(r);
            }
            assert_eq!(ech.rank(), DenseMatrix::from_rows(f, &dense).rank());
            for x in ech.nullspace(usize::MAX) {
                for r in &rows {
                    let dot = r.iter().fold(0, |acc, &(c, v)| f.add(acc, f.mul(v, x[c as usize])));
                    assert_eq!(dot, 0);
                }
            }
            assert_eq!(ech.nullspace(usize::MAX).len(), ech.nullity());
        }
    }

    #[test]
    fn span_solver_expresses_and_rejects() {
        let f = Field::new(7).unwrap();
        let gens: Vec<SparseVec> = vec![
            dense_to_sparse(&[1, 2, 0, 0]),
            dense_to_sparse(&[0, 1, 1, 0]),
            dense_to_sparse(&[1, 3, 1, 0]),
        ];
        let mut s = SpanSolver::new(f, 4, gens.iter());
        assert_eq!(s.rank(), 2);
        assert!(!s.is_independent(2));
        let target = dense_to_sparse(&[2, 6, 2, 0]);
        let coeffs = s.express(&target).unwrap();
        let mut acc = vec![0u32; 4];
        for (g, c) in coeffs {
            for &(i, v) in &gens[g as usize] {
                acc[i as usize] = f.add(acc[i as usize], f.mul(c, v));
            }
        }
        assert_eq!(acc, vec![2, 6, 2, 0]);
        assert!(s.express(&dense_to_sparse(&[0, 0, 0, 1])).is_none());
        assert_eq!(s.express(&[]).unwrap(), vec![]);
    }
}
