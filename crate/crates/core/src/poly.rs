//! The truncated polynomial algebra A(n) = F_p[x_1..x_n]/(x_i^p).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Field;
use crate::multiindex::MultiIndex;

/// Sparse element of A(n), keyed by monomial rank.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    n: usize,
    field: Field,
    coeffs: BTreeMap<u32, u32>,
}

/// Digitwise sum of two monomial ranks; `None` on an exponent overflow.
#[inline]
pub(crate) fn add_ranks(mut a: u32, mut b: u32, n: usize, p: u32) -> Option<u32> {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..n {
        let d = a % p + b % p;
        if d >= p {
            return None;
        }
        out += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    Some(out)
}

impl TruncatedPolynomial {
    pub fn zero(n: usize, field: Field) -> Self {
        TruncatedPolynomial {
            n,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, field: Field) -> Self {
        Self::monomial(&MultiIndex::zero(n, field.p()), 1, field)
    }

    pub fn monomial(a: &MultiIndex, coeff: u32, field: Field) -> Self {
        let mut poly = Self::zero(a.arity(), field);
        let c = coeff % field.p();
        if c != 0 {
            poly.coeffs.insert(a.rank(), c);
        }
        poly
    }

    /// The generator `x_j` (zero-based).
    pub fn variable(n: usize, j: usize, field: Field) -> Self {
        Self::monomial(&MultiIndex::unit(n, j, field.p()), 1, field)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: &MultiIndex) -> u32 {
        self.coeffs.get(&a.rank()).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(rank, coefficient)` in rank order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.coeffs.iter().map(|(&r, &c)| (r, c))
    }

    pub fn terms_indexed(&self) -> impl Iterator<Item = (MultiIndex, u32)> + '_ {
        self.coeffs
            .iter()
            .map(|(&r, &c)| (MultiIndex::from_rank(r, self.n, self.field.p()), c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, rank: u32, c: u32) {
        let c = c % self.field.p();
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(rank).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&rank);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (r, c) in other.terms() {
            out.add_term(r, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.p() - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.n, self.field);
        for (r, v) in self.terms() {
            out.add_term(r, self.field.mul(v, c % self.field.p()));
        }
        out
    }

    /// Product in A(n); monomials with an exponent reaching p vanish.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.field.p();
        let mut out = Self::zero(self.n, self.field);
        for (ra, ca) in self.terms() {
            for (rb, cb) in other.terms() {
                if let Some(r) = add_ranks(ra, rb, self.n, p) {
                    out.add_term(r, self.field.mul(ca, cb));
                }
            }
        }
        Ok(out)
    }

    /// Formal partial derivative along the zero-based axis `j`.
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: self.n,
            });
        }
        let p = self.field.p();
        let place = p.pow((self.n - 1 - j) as u32);
        let mut out = Self::zero(self.n, self.field);
        for (r, c) in self.terms() {
            let e = (r / place) % p;
            if e > 0 {
                out.add_term(r - place, self.field.mul(c, e));
            }
        }
        Ok(out)
    }

    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (a, c) in self.terms_indexed() {
            let mut mono = String::new();
            for (j, &e) in a.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push_str(&format!("{var}{}", j + 1)),
                    _ => mono.push_str(&format!("{var}{}^{e}", j + 1)),
                }
            }
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// `poly_mul` as a free function.
pub fn poly_mul(f: &TruncatedPolynomial, g: &TruncatedPolynomial) -> Result<TruncatedPolynomial> {
    f.mul(g)
}

/// `poly_partial` as a free function (zero-based axis).
pub fn poly_partial(f: &TruncatedPolynomial, j: usize) -> Result<TruncatedPolynomial> {
    f.partial(j)
}

impl fmt::Debug for TruncatedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("x"))
    }
}
