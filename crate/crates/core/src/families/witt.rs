//! The Witt–Jacobson algebra W(n) = Der A(n).

use crate::algebra::{Element, Grading, LieAlgebra};
use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::{Accumulator, SparseVec};
use crate::multiindex::MultiIndex;
use crate::poly::{add_ranks, TruncatedPolynomial};

/// Indexing of the canonical W(n) basis: `x^a D_j` sits at `j * p^n + rank(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittIndex {
    pub n: usize,
    pub p: u32,
    pub pn: u32,
}

impl WittIndex {
    pub fn new(n: usize, p: u32) -> Self {
        WittIndex {
            n,
            p,
            pn: p.pow(n as u32),
        }
    }

    pub fn dim(&self) -> usize {
        self.n * self.pn as usize
    }

    #[inline]
    pub fn index(&self, rank: u32, j: usize) -> u32 {
        j as u32 * self.pn + rank
    }

    #[inline]
    pub fn decode(&self, idx: u32) -> (u32, usize) {
        (idx % self.pn, (idx / self.pn) as usize)
    }

    /// Place value of variable `j` in a rank.
    #[inline]
    pub fn place(&self, j: usize) -> u32 {
        self.p.pow((self.n - 1 - j) as u32)
    }

    #[inline]
    pub fn digit(&self, rank: u32, j: usize) -> u32 {
        (rank / self.place(j)) % self.p
    }

    /// `[x^a D_i, x^b D_j] = b_i x^{a+b-e_i} D_j - a_j x^{a+b-e_j} D_i`,
    /// accumulated with weight `c`. Validated against the commutator of
    /// [`DerivationOnA`] values in the tests.
    #[inline]
    pub fn add_basis_bracket(&self, field: Field, acc: &mut Accumulator, x: u32, y: u32, c: u32) {
        let (ra, i) = self.decode(x);
        let (rb, j) = self.decode(y);
        let bi = self.digit(rb, i);
        if bi > 0 {
            if let Some(r) = add_ranks(ra, rb - self.place(i), self.n, self.p) {
                acc.add(self.index(r, j), field.mul(c, bi));
            }
        }
        let aj = self.digit(ra, j);
        if aj > 0 {
            if let Some(r) = add_ranks(ra - self.place(j), rb, self.n, self.p) {
                acc.add(self.index(r, i), field.mul(c, field.neg(aj)));
            }
        }
    }

    /// Bracket of two sparse W-coordinate vectors.
    pub fn bracket(&self, field: Field, acc: &mut Accumulator, x: &[(u32, u32)], y: &[(u32, u32)]) -> SparseVec {
        for &(u, a) in x {
            for &(v, b) in y {
                self.add_basis_bracket(field, acc, u, v, field.mul(a, b));
            }
        }
        acc.drain()
    }

    pub fn monomial(&self, rank: u32) -> MultiIndex {
        MultiIndex::from_rank(rank, self.n, self.p)
    }
}

/// Label of a monomial: `1`, `x1`, `x1^2x3`, ...
pub(crate) fn mono_label(a: &MultiIndex) -> String {
    if a.is_zero() {
        return "1".into();
    }
    let mut s = String::new();
    for (j, &e) in a.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("x{}", j + 1)),
            _ => s.push_str(&format!("x{}^{e}", j + 1)),
        }
    }
    s
}

pub(crate) fn witt_label(a: &MultiIndex, j: usize) -> String {
    if a.is_zero() {
        format!("D{}", j + 1)
    } else {
        format!("{}D{}", mono_label(a), j + 1)
    }
}

/// A derivation `sum_j f_j D_j` of A(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationOnA {
    coeffs: Vec<TruncatedPolynomial>,
}

impl DerivationOnA {
    pub fn new(coeffs: Vec<TruncatedPolynomial>) -> Result<Self> {
        if let Some(first) = coeffs.first() {
            let (n, f) = (first.arity(), first.field());
            if coeffs.len() != n || coeffs.iter().any(|c| c.arity() != n || c.field() != f) {
                return Err(Error::ArityMismatch {
                    left: coeffs.len(),
                    right: n,
                });
            }
        }
        Ok(DerivationOnA { coeffs })
    }

    pub fn zero(n: usize, field: Field) -> Self {
        DerivationOnA {
            coeffs: vec![TruncatedPolynomial::zero(n, field); n],
        }
    }

    /// `x^a D_j`.
    pub fn basis(a: &MultiIndex, j: usize, field: Field) -> Self {
        let mut d = Self::zero(a.arity(), field);
        d.coeffs[j] = TruncatedPolynomial::monomial(a, 1, field);
        d
    }

    /// `f D_j`.
    pub fn times_partial(f: &TruncatedPolynomial, j: usize) -> Self {
        let mut d = Self::zero(f.arity(), f.field());
        d.coeffs[j] = f.clone();
        d
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &TruncatedPolynomial {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    /// `D(f) = sum_j f_j * d_j f`.
    pub fn apply(&self, f: &TruncatedPolynomial) -> Result<TruncatedPolynomial> {
        let mut out = TruncatedPolynomial::zero(f.arity(), f.field());
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&f.partial(j)?)?)?;
        }
        Ok(out)
    }

    /// Commutator, determined by its values on the generators:
    /// `[D, E](x_k) = D(E(x_k)) - E(D(x_k))`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let coeffs = (0..self.arity())
            .map(|k| self.apply(&other.coeffs[k])?.sub(&other.apply(&self.coeffs[k])?))
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivationOnA { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivationOnA { coeffs })
    }

    pub fn scale(&self, c: u32) -> Self {
        DerivationOnA {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// The A(n)-module action `f * D`.
    pub fn times(&self, f: &TruncatedPolynomial) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(DerivationOnA { coeffs })
    }

    /// `div(sum f_j D_j) = sum_j d_j f_j`.
    pub fn divergence(&self) -> Result<TruncatedPolynomial> {
        let f = self.field();
        let mut out = TruncatedPolynomial::zero(self.arity(), f);
        for (j, c) in self.coeffs.iter().enumerate() {
            out = out.add(&c.partial(j)?)?;
        }
        Ok(out)
    }

    /// `D^p`, again a derivation in characteristic p; read off from its
    /// values on the generators.
    pub fn power(&self, e: u32) -> Result<Self> {
        let n = self.arity();
        let f = self.field();
        let coeffs = (0..n)
            .map(|k| {
                let mut g = TruncatedPolynomial::variable(n, k, f);
                for _ in 0..e {
                    g = self.apply(&g)?;
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivationOnA { coeffs })
    }

    pub fn to_w_coords(&self, idx: &WittIndex) -> SparseVec {
        let mut out = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            for (r, v) in c.terms() {
                out.push((idx.index(r, j), v));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn from_w_coords(idx: &WittIndex, field: Field, v: &[(u32, u32)]) -> Self {
        let mut d = Self::zero(idx.n, field);
        for &(x, c) in v {
            let (r, j) = idx.decode(x);
            d.coeffs[j].add_term(r, c);
        }
        d
    }
}

/// Build W(n) with its canonical basis `x^a D_j`, the grading `|a| - 1` and
/// the p-map `D -> D^p`.
pub fn build_w(n: usize, p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(Family::W, n, p);
    spec.validate()?;
    let field = Field::new(p)?;
    let idx = WittIndex::new(n, p);
    let mut derivations = Vec::with_capacity(idx.dim());
    let mut labels = Vec::with_capacity(idx.dim());
    let mut weights = Vec::with_capacity(idx.dim());
    for j in 0..n {
        for a in MultiIndex::all(n, p) {
            labels.push(witt_label(&a, j));
            weights.push(a.degree() as i64 - 1);
            derivations.push(DerivationOnA::basis(&a, j, field));
        }
    }
    let mut table = crate::algebra::TableBuilder::new(field, idx.dim());
    for u in 0..derivations.len() {
        for v in u + 1..derivations.len() {
            let c = derivations[u].bracket(&derivations[v])?;
            if !c.is_zero() {
                table.set(u, v, c.to_w_coords(&idx))?;
            }
        }
    }
    let mut alg = LieAlgebra::new(format!("W({n})"), field, labels, table)?;
    alg.set_grading(Some(Grading::new(weights)));
    let pmap = derivations
        .iter()
        .map(|d| Ok(d.power(p)?.to_w_coords(&idx)))
        .collect::<Result<Vec<_>>>()?;
    alg.set_p_map(Some(pmap));
    alg.set_family(Some(spec));
    Ok(alg)
}

/// The p-th power of an element of W(n) taken as an operator on A(n).
pub fn w_power(w: &LieAlgebra, x: &Element) -> Result<Element> {
    let Some(spec) = w.family().filter(|s| s.family == Family::W) else {
        return Err(Error::WrongFamily {
            expected: "W".into(),
            found: w.family().map(|s| s.family.to_string()).unwrap_or_else(|| "none".into()),
        });
    };
    if x.parent() != w.id() {
        return Err(Error::ParentMismatch);
    }
    let idx = WittIndex::new(spec.n, spec.p);
    let d = DerivationOnA::from_w_coords(&idx, w.field(), &x.to_sparse());
    Ok(w.element_from_sparse(&d.power(spec.p)?.to_w_coords(&idx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_w(1, 5).unwrap().dim(), 5);
        assert_eq!(build_w(2, 5).unwrap().dim(), 50);
    }

    #[test]
    fn w1_brackets_from_derivations() {
        let w = build_w(1, 5).unwrap();
        let d = w.index_of("D1").unwrap();
        let xd = w.index_of("x1D1").unwrap();
        let x2d = w.index_of("x1^2D1").unwrap();
        let b = |i, j| w.bracket(&w.basis_element(i), &w.basis_element(j)).unwrap();
        assert_eq!(b(xd, x2d), w.basis_element(x2d));
        assert_eq!(b(d, xd), w.basis_element(d));
    }

    #[test]
    fn closed_formula_matches_commutators() {
        for (n, p) in [(2usize, 5u32), (2, 7), (3, 5)] {
            let w = build_w(n, p).unwrap();
            let idx = WittIndex::new(n, p);
            let mut acc = Accumulator::new(w.field(), idx.dim());
            for u in 0..idx.dim() {
                for v in 0..idx.dim() {
                    let fast = idx.bracket(w.field(), &mut acc, &[(u as u32, 1)], &[(v as u32, 1)]);
                    assert_eq!(fast, w.ad_basis_column(u, v), "W({n}) p={p} pair ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn power_map_on_w1() {
        let w = build_w(1, 5).unwrap();
        let xd = w.basis_element(w.index_of("x1D1").unwrap());
        let d = w.basis_element(w.index_of("D1").unwrap());
        assert_eq!(w_power(&w, &xd).unwrap(), xd);
        assert!(w_power(&w, &d).unwrap().is_zero());
    }

    #[test]
    fn divergence_and_module_action() {
        let f = Field::new(5).unwrap();
        let x1 = TruncatedPolynomial::variable(2, 0, f);
        let d = DerivationOnA::times_partial(&x1.mul(&x1).unwrap(), 0);
        assert_eq!(d.divergence().unwrap(), x1.scale(2));
        let e = DerivationOnA::times_partial(&TruncatedPolynomial::one(2, f), 1).times(&x1).unwrap();
        assert_eq!(e.coeff(1), &x1);
    }
}
