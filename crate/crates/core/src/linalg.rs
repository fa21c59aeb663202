//! Dense linear algebra over F_p for the small matrices that show up in
//! structure checks: ad-matrices, Gram matrices, module generators.

use crate::fp::Field;

/// Sparse vector: strictly increasing indices, nonzero residues.
pub type SparseVec = Vec<(u32, u32)>;

/// Dense scratch vector that remembers which slots were touched, for
/// accumulating sparse linear combinations without hashing.
pub struct Accumulator {
    field: Field,
    values: Vec<u32>,
    touched: Vec<u32>,
}

impl Accumulator {
    pub fn new(field: Field, len: usize) -> Self {
        Accumulator {
            field,
            values: vec![0; len],
            touched: Vec::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, idx: u32, c: u32) {
        let slot = &mut self.values[idx as usize];
        if *slot == 0 {
            self.touched.push(idx);
        }
        *slot = self.field.add(*slot, c);
        // a slot that returns to zero stays in `touched`; drain filters it
    }

    pub fn add_scaled(&mut self, v: &[(u32, u32)], c: u32) {
        if c == 0 {
            return;
        }
        for &(i, x) in v {
            self.add(i, self.field.mul(x, c));
        }
    }

    /// Extract the accumulated sparse vector and reset.
    pub fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::take(&mut self.values[i as usize]);
            if v != 0 {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

pub fn sparse_to_dense(v: &[(u32, u32)], len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for &(i, c) in v {
        out[i as usize] = c;
    }
    out
}

pub fn dense_to_sparse(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as u32, c))
        .collect()
}

/// `a + c*b` on sparse vectors.
pub fn sparse_axpy(field: Field, a: &[(u32, u32)], b: &[(u32, u32)], c: u32) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(b[j].1, c);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(b[j].1, c));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        DenseMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        DenseMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator far from overflow
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|s| *s %= p);
                }
            }
            for (j, s) in acc.iter().enumerate() {
                out.set(i, j, (*s % p) as u32);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let m = self.get(i, c);
                if m == 0 {
                    continue;
                }
                let neg = f.neg(m);
                for j in c..self.cols {
                    let v = f.add(self.get(i, j), f.mul(neg, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Characteristic polynomial `det(tI - M)`, coefficients low degree first.
    ///
    /// Hessenberg reduction followed by the standard recurrence; exact over F_p.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    let (a, b) = (h.get(i, j), h.get(m, j));
                    h.set(i, j, b);
                    h.set(m, j, a);
                }
                for j in 0..n {
                    let (a, b) = (h.get(j, i), h.get(j, m));
                    h.set(j, i, b);
                    h.set(j, m, a);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p_k(t) = charpoly of the leading k x k block
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 1..=n {
            let mut next = vec![0u32; k + 1];
            let prev = &polys[k - 1];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(k - 1, k - 1), c));
            }
            let mut t = 1u32;
            for i in 1..k {
                t = f.mul(t, h.get(k - i, k - i - 1));
                let coeff = f.mul(t, h.get(k - i - 1, k - 1));
                if coeff == 0 {
                    continue;
                }
                for (d, &c) in polys[k - i - 1].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coeff, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// `poly(M)` for a polynomial with low-degree-first coefficients.
    pub fn eval_poly(&self, poly: &[u32]) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(self.field, n, n);
        for &c in poly.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// A subspace of F_p^n held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn spanned_by(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
            if s.dim() == ambient {
                break;
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce against the echelon rows; the result is zero iff `v` is inside.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                if r != 0 {
                    *x = f.add(*x, f.mul(neg, r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pc]);
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        // keep the form fully reduced
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&v).skip(pc) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(neg, r));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, v);
        true
    }

    /// Coordinates of a vector in terms of `basis()`, or `None` when outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        if w.iter().any(|&x| x != 0) {
            None
        } else {
            Some(coords)
        }
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Zassenhaus: rows (u, u) for u in self and (w, 0) for w in other
        let n = self.ambient;
        let mut m = Vec::new();
        for u in &self.rows {
            let mut row = u.clone();
            row.extend_from_slice(u);
            m.push(row);
        }
        for w in &other.rows {
            let mut row = w.clone();
            row.extend(std::iter::repeat_n(0, n));
            m.push(row);
        }
        let mut out = Subspace::zero(self.field, n);
        if m.is_empty() {
            return out;
        }
        let mut dm = DenseMatrix::from_rows(self.field, &m);
        let pivots = dm.rref_in_place();
        for (r, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                out.insert(dm.row(r)[n..].to_vec());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = DenseMatrix::from_rows(f5(), &[vec![1, 2, 3], vec![2, 4, 1], vec![3, 1, 4]]);
        let r = m.rank();
        let ns = m.nullspace();
        assert_eq!(r + ns.len(), 3);
        for v in ns {
            assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of t^3 + 2t + 3 over F_5
        let m = DenseMatrix::from_rows(f5(), &[vec![0, 0, 2], vec![1, 0, 3], vec![0, 1, 0]]);
        assert_eq!(m.charpoly(), vec![3, 2, 0, 1]);
        // Cayley-Hamilton
        assert!(m.eval_poly(&m.charpoly()).is_zero());
    }

    #[test]
    fn charpoly_cayley_hamilton_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = Field::new(7).unwrap();
        for n in 1..9 {
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random_range(0..7)).collect())
                .collect();
            let m = DenseMatrix::from_rows(f, &rows);
            let cp = m.charpoly();
            assert_eq!(cp.len(), n + 1);
            assert_eq!(cp[n], 1);
            assert!(m.eval_poly(&cp).is_zero());
            // constant term is (-1)^n det
            let det_sign = if n % 2 == 0 { 1 } else { f.neg(1) };
            let singular = m.rank() < n;
            assert_eq!(f.mul(cp[0], det_sign) == 0, singular);
        }
    }

    #[test]
    fn subspace_intersection() {
        let f = f5();
        let a = Subspace::spanned_by(f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::spanned_by(f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 3, 0]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = DenseMatrix::from_rows(f5(), &[vec![1, 1], vec![2, 2]]);
        let x = m.solve(&[3, 1]).unwrap();
        assert_eq!(m.apply(&x), vec![3, 1]);
        assert!(m.solve(&[1, 1]).is_none());
    }
}
