//! The Hamiltonian algebra H(n), n = 2m, realised as the image of `D_H`.

use crate::algebra::{Grading, LieAlgebra};
use crate::error::{Error, Result};
use crate::families::witt::{mono_label, DerivationOnA, WittIndex};
use crate::families::{p_map_from_embedding, table_from_embedding, Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::Accumulator;
use crate::multiindex::MultiIndex;
use crate::poly::TruncatedPolynomial;

/// `D_H(f) = sum_{i<m} [D_i(f) D_{i+m} - D_{i+m}(f) D_i]`.
pub fn d_h(f: &TruncatedPolynomial) -> Result<DerivationOnA> {
    let n = f.arity();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("D_H needs even arity, got {n}")));
    }
    let m = n / 2;
    let neg = f.field().p() - 1;
    let mut d = DerivationOnA::zero(n, f.field());
    for i in 0..m {
        d = d.add(&DerivationOnA::times_partial(&f.partial(i)?, i + m))?;
        d = d.add(&DerivationOnA::times_partial(&f.partial(i + m)?, i).scale(neg))?;
    }
    Ok(d)
}

/// Exponents indexing the basis `D_H(x^a)`: every `a` except 0 and sigma,
/// in rank order. The basis index of `a` is therefore `rank(a) - 1`.
pub fn hamiltonian_basis(n: usize, p: u32) -> Vec<MultiIndex> {
    let top = MultiIndex::top(n, p);
    MultiIndex::all(n, p)
        .filter(|a| !a.is_zero() && *a != top)
        .collect()
}

pub fn build_h(n: usize, p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(Family::H, n, p);
    spec.validate()?;
    let field = Field::new(p)?;
    let idx = WittIndex::new(n, p);
    let exps = hamiltonian_basis(n, p);
    let mut basis = Vec::with_capacity(exps.len());
    let mut labels = Vec::with_capacity(exps.len());
    let mut weights = Vec::with_capacity(exps.len());
    for a in &exps {
        basis.push(d_h(&TruncatedPolynomial::monomial(a, 1, field))?.to_w_coords(&idx));
        labels.push(format!("DH({})", mono_label(a)));
        weights.push(a.degree() as i64 - 2);
    }
    let mut acc = Accumulator::new(field, idx.dim());
    let table = table_from_embedding(field, idx.dim(), &basis, &labels, |x, y| {
        idx.bracket(field, &mut acc, x, y)
    })?;
    let mut alg = LieAlgebra::new(format!("H({n})"), field, labels, table)?;
    alg.set_grading(Some(Grading::new(weights)));
    alg.set_p_map(p_map_from_embedding(&idx, field, &basis));
    alg.set_embedding(Some(basis));
    alg.set_family(Some(spec));
    Ok(alg)
}
