//! Exponent tuples for monomials of the truncated polynomial algebra.
//!
//! Variables are numbered from zero internally; labels print them from one.
//! The rank encoding reads the exponent tuple as a base-p numeral with the
//! first variable as the most significant digit, which fixes the canonical
//! monomial order shared by every constructed basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exps: Vec<u32>,
    p: u32,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>, p: u32) -> Result<Self> {
        if let Some(&bad) = exps.iter().find(|&&e| e >= p) {
            return Err(Error::InvalidParameters(format!(
                "exponent {bad} not below p = {p}"
            )));
        }
        Ok(MultiIndex { exps, p })
    }

    pub fn zero(n: usize, p: u32) -> Self {
        MultiIndex {
            exps: vec![0; n],
            p,
        }
    }

    /// The unit tuple with a one in slot `j`.
    pub fn unit(n: usize, j: usize, p: u32) -> Self {
        let mut exps = vec![0; n];
        exps[j] = 1;
        MultiIndex { exps, p }
    }

    /// The top tuple `(p-1, ..., p-1)`.
    pub fn top(n: usize, p: u32) -> Self {
        MultiIndex {
            exps: vec![p - 1; n],
            p,
        }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `a!` modulo p; never zero since every entry is below p.
    pub fn factorial(&self, field: Field) -> u32 {
        self.exps
            .iter()
            .fold(1, |acc, &e| field.mul(acc, field.factorial(e)))
    }

    /// Coordinatewise order.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Sum, or `None` when some exponent reaches p (the monomial is zero in A(n)).
    pub fn checked_add(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        if exps.iter().any(|&e| e >= self.p) {
            None
        } else {
            Some(MultiIndex { exps, p: self.p })
        }
    }

    /// Difference, or `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex { exps, p: self.p })
    }

    pub fn rank(&self) -> u32 {
        self.exps.iter().fold(0, |acc, &e| acc * self.p + e)
    }

    pub fn from_rank(mut rank: u32, n: usize, p: u32) -> Self {
        let mut exps = vec![0; n];
        for slot in exps.iter_mut().rev() {
            *slot = rank % p;
            rank /= p;
        }
        MultiIndex { exps, p }
    }

    /// All `p^n` tuples in rank order.
    pub fn all(n: usize, p: u32) -> impl Iterator<Item = MultiIndex> {
        let count = p.pow(n as u32);
        (0..count).map(move |r| MultiIndex::from_rank(r, n, p))
    }

    /// Conjugate slot `j'` for a tuple of arity `2m`.
    pub fn conj_slot(j: usize, m: usize) -> usize {
        if j < m {
            j + m
        } else {
            j - m
        }
    }

    /// Sign `sigma(j)`: +1 on the first half, -1 on the second.
    pub fn slot_sign(j: usize, m: usize) -> i64 {
        if j < m {
            1
        } else {
            -1
        }
    }

    /// Sign `prod sigma(i)^{a_i}` and conjugate tuple with the two halves swapped.
    pub fn sign_conj(&self, m: usize) -> Result<(i64, MultiIndex)> {
        if self.exps.len() != 2 * m {
            return Err(Error::InvalidParameters(format!(
                "sign/conjugate needs arity {} but tuple has arity {}",
                2 * m,
                self.exps.len()
            )));
        }
        let second_half: u32 = self.exps[m..].iter().sum();
        let sign = if second_half.is_multiple_of(2) { 1 } else { -1 };
        let exps = (0..2 * m)
            .map(|i| self.exps[Self::conj_slot(i, m)])
            .collect();
        Ok((sign, MultiIndex { exps, p: self.p }))
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Product of coordinatewise binomials modulo p; zero unless `b <= a`.
pub fn multiindex_binom(a: &MultiIndex, b: &MultiIndex, field: Field) -> Result<u32> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    Ok(a.exps
        .iter()
        .zip(&b.exps)
        .fold(1, |acc, (&x, &y)| field.mul(acc, field.binom(x as u64, y as u64))))
}

/// Sign and conjugate of a tuple of arity `2m`.
pub fn multiindex_sign_conj(a: &MultiIndex, m: usize) -> Result<(i64, MultiIndex)> {
    a.sign_conj(m)
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(e: &[u32], p: u32) -> MultiIndex {
        MultiIndex::new(e.to_vec(), p).unwrap()
    }

    #[test]
    fn binom_examples() {
        let f = Field::new(5).unwrap();
        assert_eq!(multiindex_binom(&mi(&[4, 3], 5), &mi(&[2, 1], 5), f).unwrap(), 3);
        assert_eq!(multiindex_binom(&mi(&[4, 3], 5), &mi(&[4, 3], 5), f).unwrap(), 1);
        assert_eq!(multiindex_binom(&mi(&[1, 0], 5), &mi(&[0, 2], 5), f).unwrap(), 0);
        assert!(multiindex_binom(&mi(&[1, 0], 5), &mi(&[0, 2, 0], 5), f).is_err());
    }

    #[test]
    fn sign_conj_examples() {
        let (s, c) = multiindex_sign_conj(&mi(&[1, 1], 5), 1).unwrap();
        assert_eq!((s, c), (-1, mi(&[1, 1], 5)));
        let (s, c) = multiindex_sign_conj(&mi(&[2, 0], 5), 1).unwrap();
        assert_eq!((s, c), (1, mi(&[0, 2], 5)));
        let (s, c) = multiindex_sign_conj(&mi(&[0, 0, 3, 0], 5), 2).unwrap();
        assert_eq!((s, c), (-1, mi(&[3, 0, 0, 0], 5)));
        assert!(multiindex_sign_conj(&mi(&[0, 0, 3], 5), 1).is_err());
    }

    #[test]
    fn rank_round_trip_and_order() {
        let all: Vec<_> = MultiIndex::all(3, 5).collect();
        assert_eq!(all.len(), 125);
        for (r, a) in all.iter().enumerate() {
            assert_eq!(a.rank() as usize, r);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    fn arb_index(n: usize, p: u32) -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(0..p, n).prop_map(move |e| MultiIndex::new(e, p).unwrap())
    }

    proptest! {
        #[test]
        fn binom_row_symmetry(a in arb_index(4, 7), b in arb_index(4, 7)) {
            let f = Field::new(7).unwrap();
            if b.le(&a) {
                let c = a.checked_sub(&b).unwrap();
                prop_assert_eq!(multiindex_binom(&a, &b, f).unwrap(), multiindex_binom(&a, &c, f).unwrap());
            }
        }

        #[test]
        fn conj_is_an_involution(a in arb_index(4, 5)) {
            let (s1, c) = a.sign_conj(2).unwrap();
            let (s2, cc) = c.sign_conj(2).unwrap();
            prop_assert_eq!(&cc, &a);
            let parity = if a.degree() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(s1 * s2, parity);
        }
    }
}
