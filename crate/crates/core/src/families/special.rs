//! The special algebra S(n), spanned by the images of the maps `D_ij`.

use crate::algebra::{Grading, LieAlgebra};
use crate::error::{Error, Result};
use crate::families::witt::{mono_label, DerivationOnA, WittIndex};
use crate::families::{p_map_from_embedding, table_from_embedding, Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::Accumulator;
use crate::multiindex::MultiIndex;
use crate::poly::TruncatedPolynomial;
use crate::sparse::SparseEchelon;

/// `D_ij(f) = D_j(f) D_i - D_i(f) D_j` (zero-based axes).
pub fn d_ij(f: &TruncatedPolynomial, i: usize, j: usize) -> Result<DerivationOnA> {
    let n = f.arity();
    for k in [i, j] {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, bound: n });
        }
    }
    let a = DerivationOnA::times_partial(&f.partial(j)?, i);
    let b = DerivationOnA::times_partial(&f.partial(i)?, j);
    a.add(&b.scale(f.field().p() - 1))
}

/// Build S(n): a greedy independent subset of `{D_ij(x^a) : i < j}`, taken in
/// the order (|a|, rank a, i, j), checked against the dimension formula and
/// closed under brackets.
pub fn build_s(n: usize, p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(Family::S, n, p);
    spec.validate()?;
    let field = Field::new(p)?;
    let idx = WittIndex::new(n, p);
    let mut monomials: Vec<MultiIndex> = MultiIndex::all(n, p).collect();
    monomials.sort_by_key(|a| (a.degree(), a.rank()));
    let mut ech = SparseEchelon::new(field, idx.dim());
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for a in &monomials {
        let f = TruncatedPolynomial::monomial(a, 1, field);
        for i in 0..n {
            for j in i + 1..n {
                let v = d_ij(&f, i, j)?.to_w_coords(&idx);
                if v.is_empty() || ech.insert(&v).is_none() {
                    continue;
                }
                basis.push(v);
                labels.push(format!("D{}{}({})", i + 1, j + 1, mono_label(a)));
                weights.push(a.degree() as i64 - 2);
            }
        }
    }
    if basis.len() != spec.expected_dim() {
        return Err(Error::Construction(format!(
            "S({n}) spanning set has rank {}, expected {}",
            basis.len(),
            spec.expected_dim()
        )));
    }
    let mut acc = Accumulator::new(field, idx.dim());
    let table = table_from_embedding(field, idx.dim(), &basis, &labels, |x, y| {
        idx.bracket(field, &mut acc, x, y)
    })?;
    let mut alg = LieAlgebra::new(format!("S({n})"), field, labels, table)?;
    alg.set_grading(Some(Grading::new(weights)));
    alg.set_p_map(p_map_from_embedding(&idx, field, &basis));
    alg.set_embedding(Some(basis));
    alg.set_family(Some(spec));
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5).unwrap()
    }

    fn mono(e: &[u32]) -> TruncatedPolynomial {
        TruncatedPolynomial::monomial(&MultiIndex::new(e.to_vec(), 5).unwrap(), 1, f5())
    }

    #[test]
    fn d_ij_examples() {
        assert!(d_ij(&TruncatedPolynomial::one(2, f5()), 0, 1).unwrap().is_zero());
        let d1 = DerivationOnA::times_partial(&TruncatedPolynomial::one(2, f5()), 0);
        assert_eq!(d_ij(&mono(&[0, 1]), 0, 1).unwrap(), d1);
        // d_12(x1 x2) = x1 D1 - x2 D2
        let expected = DerivationOnA::times_partial(&mono(&[1, 0]), 0)
            .add(&DerivationOnA::times_partial(&mono(&[0, 1]), 1).scale(4))
            .unwrap();
        assert_eq!(d_ij(&mono(&[1, 1]), 0, 1).unwrap(), expected);
        let f = mono(&[2, 1]);
        assert_eq!(d_ij(&f, 1, 0).unwrap(), d_ij(&f, 0, 1).unwrap().scale(4));
        assert!(d_ij(&f, 1, 1).unwrap().is_zero());
        assert!(d_ij(&f, 0, 2).is_err());
    }

    #[test]
    fn s3_is_divergence_free() {
        let s = build_s(3, 5).unwrap();
        assert_eq!(s.dim(), 248);
        let idx = WittIndex::new(3, 5);
        for v in s.embedding().unwrap() {
            let d = DerivationOnA::from_w_coords(&idx, f5(), v);
            assert!(d.divergence().unwrap().is_zero());
        }
    }
}
