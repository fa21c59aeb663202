//! Finite-dimensional Lie algebras over F_p given by structure constants.
//!
//! Brackets are stored only for basis pairs `i < j`, in a compressed table
//! indexed by the position of the pair in the strict upper triangle; the
//! cases `i > j` and `i = j` are derived structurally, so antisymmetry cannot
//! be violated by the stored data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::fp::Field;
use crate::linalg::{sparse_to_dense, Accumulator, DenseMatrix, SparseVec, Subspace};
use crate::sparse::SparseEchelon;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Position of the pair `i < j` in the strict upper triangle of a `dim x dim` table.
#[inline]
pub fn pair_index(i: usize, j: usize, dim: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

/// Integer weight per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<i64>,
}

impl Grading {
    pub fn new(weights: Vec<i64>) -> Self {
        Grading { weights }
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn min_weight(&self) -> i64 {
        self.weights.iter().copied().min().unwrap_or(0)
    }

    pub fn max_weight(&self) -> i64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }
}

/// A Lie algebra element: coordinates in the basis of its parent.
///
/// Equality compares coordinates only, so elements of two identical
/// constructions compare equal; binary operations still check the parent.
#[derive(Clone)]
pub struct Element {
    coords: Vec<u32>,
    parent: u64,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| format!("{c}*e{i}"))
            .collect();
        if nz.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", nz.join(" + "))
        }
    }
}

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn parent(&self) -> u64 {
        self.parent
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn to_sparse(&self) -> SparseVec {
        crate::linalg::dense_to_sparse(&self.coords)
    }
}

/// Accumulates brackets before freezing them into a [`LieAlgebra`].
pub struct TableBuilder {
    field: Field,
    dim: usize,
    pairs: BTreeMap<(u32, u32), SparseVec>,
}

impl TableBuilder {
    pub fn new(field: Field, dim: usize) -> Self {
        TableBuilder {
            field,
            dim,
            pairs: BTreeMap::new(),
        }
    }

    /// Record `[e_i, e_j] = v`; the pair may be given in either order.
    pub fn set(&mut self, i: usize, j: usize, v: SparseVec) -> Result<()> {
        for idx in [i, j] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    bound: self.dim,
                });
            }
        }
        let f = self.field;
        let mut v: SparseVec = v.into_iter().filter(|&(_, c)| c % f.p() != 0).collect();
        for (k, _) in &v {
            if *k as usize >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: *k as usize,
                    bound: self.dim,
                });
            }
        }
        if i == j {
            if v.is_empty() {
                return Ok(());
            }
            return Err(Error::Construction(format!(
                "nonzero self-bracket on basis vector {i}"
            )));
        }
        let key = if i < j {
            (i as u32, j as u32)
        } else {
            for e in v.iter_mut() {
                e.1 = f.neg(e.1);
            }
            (j as u32, i as u32)
        };
        v.sort_unstable();
        if v.is_empty() {
            self.pairs.remove(&key);
        } else {
            self.pairs.insert(key, v);
        }
        Ok(())
    }
}

/// A Lie algebra given by structure constants over F_p.
#[derive(Clone)]
pub struct LieAlgebra {
    id: u64,
    name: String,
    field: Field,
    labels: Vec<String>,
    offsets: Vec<u32>,
    entries: Vec<(u32, u32)>,
    grading: Option<Grading>,
    p_map: Option<Vec<SparseVec>>,
    family: Option<FamilySpec>,
    embedding: Option<Vec<SparseVec>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {}, p = {})", self.name, self.dim(), self.field.p())
    }
}

impl LieAlgebra {
    pub fn new(name: impl Into<String>, field: Field, labels: Vec<String>, table: TableBuilder) -> Result<Self> {
        if table.dim != labels.len() || table.field != field {
            return Err(Error::Construction(
                "table dimension or field does not match the basis".into(),
            ));
        }
        let dim = labels.len();
        let npairs = dim * dim.saturating_sub(1) / 2;
        let mut offsets = Vec::with_capacity(npairs + 1);
        let mut entries = Vec::new();
        offsets.push(0u32);
        let mut iter = table.pairs.into_iter().peekable();
        for i in 0..dim {
            for j in i + 1..dim {
                if let Some(((a, b), _)) = iter.peek() {
                    if (*a as usize, *b as usize) == (i, j) {
                        let (_, v) = iter.next().unwrap();
                        entries.extend(v);
                    }
                }
                offsets.push(entries.len() as u32);
            }
        }
        Ok(LieAlgebra {
            id: fresh_id(),
            name: name.into(),
            field,
            labels,
            offsets,
            entries,
            grading: None,
            p_map: None,
            family: None,
            embedding: None,
        })
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(field: Field, dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("e{}", i + 1)).collect();
        let mut alg = Self::new("abelian", field, labels, TableBuilder::new(field, dim)).unwrap();
        alg.grading = Some(Grading::new(vec![0; dim]));
        alg
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn set_grading(&mut self, grading: Option<Grading>) {
        self.grading = grading;
    }

    pub fn p_map(&self) -> Option<&[SparseVec]> {
        self.p_map.as_deref()
    }

    pub fn set_p_map(&mut self, table: Option<Vec<SparseVec>>) {
        self.p_map = table;
    }

    pub fn family(&self) -> Option<FamilySpec> {
        self.family
    }

    pub fn set_family(&mut self, family: Option<FamilySpec>) {
        self.family = family;
    }

    /// Coordinates of each basis vector inside an ambient algebra, when the
    /// constructor recorded them (S, H, K inside W).
    pub fn embedding(&self) -> Option<&[SparseVec]> {
        self.embedding.as_deref()
    }

    pub fn set_embedding(&mut self, e: Option<Vec<SparseVec>>) {
        self.embedding = e;
    }

    /// Stored structure constants for `i < j`.
    #[inline]
    pub fn stored_bracket(&self, i: usize, j: usize) -> &[(u32, u32)] {
        let idx = pair_index(i, j, self.dim());
        &self.entries[self.offsets[idx] as usize..self.offsets[idx + 1] as usize]
    }

    /// `[e_i, e_j]` as a sign and a stored coefficient list.
    #[inline]
    pub fn basis_bracket(&self, i: usize, j: usize) -> (bool, &[(u32, u32)]) {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => (false, self.stored_bracket(i, j)),
            Greater => (true, self.stored_bracket(j, i)),
            Equal => (false, &[]),
        }
    }

    /// Add `c * [e_i, e_j]` into an accumulator.
    #[inline]
    pub fn add_basis_bracket(&self, acc: &mut Accumulator, i: usize, j: usize, c: u32) {
        let (neg, v) = self.basis_bracket(i, j);
        let c = if neg { self.field.neg(c) } else { c };
        acc.add_scaled(v, c);
    }

    /// All stored pairs `(i, j, [e_i, e_j])` with `i < j` and nonzero bracket.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[(u32, u32)])> + '_ {
        let dim = self.dim();
        (0..dim).flat_map(move |i| {
            (i + 1..dim).filter_map(move |j| {
                let v = self.stored_bracket(i, j);
                if v.is_empty() {
                    None
                } else {
                    Some((i, j, v))
                }
            })
        })
    }

    pub fn nonzero_constant_count(&self) -> usize {
        self.entries.len()
    }

    /// A fresh algebra with the same table; used for bit-level comparisons.
    pub fn same_table(&self, other: &LieAlgebra) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.offsets == other.offsets
            && self.entries == other.entries
    }

    // ----- elements -----

    pub fn element(&self, coords: Vec<u32>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidParameters(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let p = self.p();
        Ok(Element {
            coords: coords.into_iter().map(|c| c % p).collect(),
            parent: self.id,
        })
    }

    pub fn element_from_sparse(&self, v: &[(u32, u32)]) -> Element {
        Element {
            coords: sparse_to_dense(v, self.dim()),
            parent: self.id,
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            coords: vec![0; self.dim()],
            parent: self.id,
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = vec![0; self.dim()];
        coords[i] = 1;
        Element {
            coords,
            parent: self.id,
        }
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Element {
        let p = self.p();
        Element {
            coords: (0..self.dim()).map(|_| rng.random_range(0..p)).collect(),
            parent: self.id,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.parent != self.id {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let f = self.field;
        Ok(Element {
            coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| f.add(a, b)).collect(),
            parent: self.id,
        })
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let f = self.field;
        Ok(Element {
            coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| f.sub(a, b)).collect(),
            parent: self.id,
        })
    }

    pub fn scale(&self, x: &Element, c: u32) -> Result<Element> {
        self.check(x)?;
        let f = self.field;
        Ok(Element {
            coords: x.coords.iter().map(|&a| f.mul(a, c % f.p())).collect(),
            parent: self.id,
        })
    }

    /// Bracket of two sparse coordinate vectors.
    pub fn bracket_sparse(&self, x: &[(u32, u32)], y: &[(u32, u32)]) -> SparseVec {
        let f = self.field;
        let mut acc = Accumulator::new(f, self.dim());
        for &(i, a) in x {
            for &(j, b) in y {
                if i != j {
                    self.add_basis_bracket(&mut acc, i as usize, j as usize, f.mul(a, b));
                }
            }
        }
        acc.drain()
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element_from_sparse(&self.bracket_sparse(&x.to_sparse(), &y.to_sparse())))
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Element {
        self.element_from_sparse(&self.jacobi_defect_sparse(i, j, k))
    }

    pub fn jacobi_defect_sparse(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let f = self.field;
        let mut acc = Accumulator::new(f, self.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let (neg, v) = self.basis_bracket(a, b);
            for &(t, x) in v {
                let x = if neg { f.neg(x) } else { x };
                if t as usize != c {
                    self.add_basis_bracket(&mut acc, t as usize, c, x);
                }
            }
        }
        acc.drain()
    }

    /// First basis triple with a nonzero Jacobi defect, scanning all `i<j<k`.
    pub fn jacobi_witness_exhaustive(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    if !self.jacobi_defect_sparse(i, j, k).is_empty() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Jacobi check on `count` random basis triples.
    pub fn jacobi_witness_random(&self, count: usize, seed: u64) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let (i, j, k) = (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(0..d));
            if !self.jacobi_defect_sparse(i, j, k).is_empty() {
                return Some((i, j, k));
            }
        }
        None
    }

    /// Column `j` of `ad(e_i)`, i.e. `[e_i, e_j]`, as a signed sparse vector.
    pub fn ad_basis_column(&self, i: usize, j: usize) -> SparseVec {
        let f = self.field;
        let (neg, v) = self.basis_bracket(i, j);
        v.iter().map(|&(k, c)| (k, if neg { f.neg(c) } else { c })).collect()
    }

    /// Sparse columns of `ad(x)`.
    pub fn ad_columns(&self, x: &[(u32, u32)]) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|j| self.bracket_sparse(x, &[(j as u32, 1)]))
            .collect()
    }

    pub fn ad_matrix(&self, x: &Element) -> Result<DenseMatrix> {
        self.check(x)?;
        let d = self.dim();
        let mut m = DenseMatrix::zeros(self.field, d, d);
        for (j, col) in self.ad_columns(&x.to_sparse()).into_iter().enumerate() {
            for (k, c) in col {
                m.set(k as usize, j, c);
            }
        }
        Ok(m)
    }

    fn ad_basis_matrix(&self, i: usize) -> DenseMatrix {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(self.field, d, d);
        for j in 0..d {
            for (k, c) in self.ad_basis_column(i, j) {
                m.set(k as usize, j, c);
            }
        }
        m
    }

    /// Gram matrix of `tr(ad x ad y)` on the basis and its rank.
    pub fn killing_form(&self) -> (DenseMatrix, usize) {
        let f = self.field;
        let d = self.dim();
        // sparse entries (row k, col l, c) of each ad(e_i)
        let ads: Vec<Vec<(u32, u32, u32)>> = (0..d)
            .map(|i| {
                (0..d)
                    .flat_map(|l| {
                        self.ad_basis_column(i, l)
                            .into_iter()
                            .map(move |(k, c)| (k, l as u32, c))
                    })
                    .collect()
            })
            .collect();
        let mut gram = DenseMatrix::zeros(f, d, d);
        for j in 0..d {
            let adj = self.ad_basis_matrix(j);
            for i in 0..=j {
                let mut t = 0;
                for &(k, l, c) in &ads[i] {
                    t = f.add(t, f.mul(c, adj.get(l as usize, k as usize)));
                }
                gram.set(i, j, t);
                gram.set(j, i, t);
            }
        }
        let rank = gram.rank();
        (gram, rank)
    }

    fn subspace_from_echelon(&self, ech: &SparseEchelon) -> Subspace {
        let d = self.dim();
        if ech.rank() == d {
            return Subspace::full(self.field, d);
        }
        Subspace::spanned_by(
            self.field,
            d,
            (0..ech.rank()).map(|k| sparse_to_dense(ech.row(k), d)),
        )
    }

    /// Basis of `[L, L]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let d = self.dim();
        let mut ech = SparseEchelon::new(self.field, d);
        for (_, _, v) in self.nonzero_brackets() {
            ech.insert(v);
            if ech.rank() == d {
                break;
            }
        }
        self.subspace_from_echelon(&ech)
    }

    /// Common kernel of all `ad(e_i)`.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let f = self.field;
        // row (i, k): x -> [e_i, x]_k = sum_j x_j c_{ij}^k
        let mut ech = SparseEchelon::new(f, d);
        for i in 0..d {
            let mut rows: BTreeMap<u32, SparseVec> = BTreeMap::new();
            for j in 0..d {
                for (k, c) in self.ad_basis_column(i, j) {
                    rows.entry(k).or_default().push((j as u32, c));
                }
            }
            for row in rows.values() {
                ech.insert(row);
            }
            if ech.rank() == d {
                return Subspace::zero(f, d);
            }
        }
        Subspace::spanned_by(f, d, ech.nullspace(usize::MAX))
    }

    /// Smallest ideal containing `x`.
    pub fn ideal_closure(&self, x: &Element) -> Result<Subspace> {
        self.check(x)?;
        Ok(self.ideal_closure_sparse(&x.to_sparse()))
    }

    pub fn ideal_closure_sparse(&self, x: &[(u32, u32)]) -> Subspace {
        let d = self.dim();
        let mut ech = SparseEchelon::new(self.field, d);
        let mut queue: Vec<SparseVec> = Vec::new();
        if ech.insert(x).is_some() {
            queue.push(x.to_vec());
        }
        while let Some(v) = queue.pop() {
            for i in 0..d {
                let w = self.bracket_sparse(&[(i as u32, 1)], &v);
                if !w.is_empty() && ech.insert(&w).is_some() {
                    queue.push(w);
                }
            }
            if ech.rank() == d {
                break;
            }
        }
        self.subspace_from_echelon(&ech)
    }

    /// Whether a subspace is stable under every `ad(e_i)`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let d = self.dim();
        s.basis().iter().all(|v| {
            let sv = crate::linalg::dense_to_sparse(v);
            (0..d).all(|i| {
                let w = self.bracket_sparse(&[(i as u32, 1)], &sv);
                s.contains(&sparse_to_dense(&w, d))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5).unwrap()
    }

    fn two_dim() -> LieAlgebra {
        let mut t = TableBuilder::new(f5(), 2);
        t.set(0, 1, vec![(1, 1)]).unwrap();
        LieAlgebra::new("aff1", f5(), vec!["e1".into(), "e2".into()], t).unwrap()
    }

    #[test]
    fn antisymmetry_is_structural() {
        let l = two_dim();
        let e1 = l.basis_element(0);
        let e2 = l.basis_element(1);
        assert_eq!(l.bracket(&e1, &e2).unwrap(), e2);
        assert_eq!(l.bracket(&e2, &e1).unwrap(), l.scale(&e2, 4).unwrap());
        assert!(l.bracket(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn parent_mismatch_rejected() {
        let a = two_dim();
        let b = two_dim();
        assert!(matches!(
            a.bracket(&a.basis_element(0), &b.basis_element(1)),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn derived_and_center_of_small_algebras() {
        let l = two_dim();
        let der = l.derived_subalgebra();
        assert_eq!(der.dim(), 1);
        assert!(der.contains(&[0, 1]));
        assert_eq!(l.center().dim(), 0);
        let ab = LieAlgebra::abelian(f5(), 3);
        assert_eq!(ab.derived_subalgebra().dim(), 0);
        assert_eq!(ab.center().dim(), 3);
        assert_eq!(ab.killing_form().1, 0);
    }

    #[test]
    fn ideal_closure_of_zero_is_zero() {
        let l = two_dim();
        assert_eq!(l.ideal_closure(&l.zero()).unwrap().dim(), 0);
        assert_eq!(l.ideal_closure(&l.basis_element(1)).unwrap().dim(), 1);
        assert_eq!(l.ideal_closure(&l.basis_element(0)).unwrap().dim(), 2);
    }

    #[test]
    fn self_bracket_rejected() {
        let mut t = TableBuilder::new(f5(), 2);
        assert!(t.set(1, 1, vec![(0, 1)]).is_err());
        assert!(t.set(0, 2, vec![]).is_err());
    }
}
