//! The contact algebra K(n), n = 2m + 1, realised as the image of `D_K`.

use crate::algebra::{Grading, LieAlgebra};
use crate::error::{Error, Result};
use crate::families::witt::{mono_label, DerivationOnA, WittIndex};
use crate::families::{p_map_from_embedding, table_from_embedding, Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::Accumulator;
use crate::multiindex::MultiIndex;
use crate::poly::TruncatedPolynomial;

/// `D_K(f) = sum_{i<m} [D_i(f) D_{i+m} - D_{i+m}(f) D_i]
///          + sum_{j<2m} x_j [D_n(f) D_j - D_j(f) D_n] + 2 f D_n`.
pub fn d_k(f: &TruncatedPolynomial) -> Result<DerivationOnA> {
    let n = f.arity();
    if n < 3 || n % 2 != 1 {
        return Err(Error::InvalidParameters(format!("D_K needs odd arity >= 3, got {n}")));
    }
    let m = (n - 1) / 2;
    let field = f.field();
    let neg = field.p() - 1;
    let last = n - 1;
    let mut d = DerivationOnA::zero(n, field);
    for i in 0..m {
        d = d.add(&DerivationOnA::times_partial(&f.partial(i)?, i + m))?;
        d = d.add(&DerivationOnA::times_partial(&f.partial(i + m)?, i).scale(neg))?;
    }
    let dn = f.partial(last)?;
    for j in 0..2 * m {
        let xj = TruncatedPolynomial::variable(n, j, field);
        d = d.add(&DerivationOnA::times_partial(&xj.mul(&dn)?, j))?;
        d = d.add(&DerivationOnA::times_partial(&xj.mul(&f.partial(j)?)?, last).scale(neg))?;
    }
    d.add(&DerivationOnA::times_partial(&f.scale(2), last))
}

/// Exponents indexing the basis `D_K(x^a)`; tau = sigma is dropped when p | m + 2.
pub fn contact_basis(n: usize, p: u32) -> Vec<MultiIndex> {
    let m = (n - 1) / 2;
    let top = MultiIndex::top(n, p);
    let drop_top = (m as u32 + 2).is_multiple_of(p);
    MultiIndex::all(n, p).filter(|a| !(drop_top && *a == top)).collect()
}

pub fn build_k(n: usize, p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(Family::K, n, p);
    spec.validate()?;
    let field = Field::new(p)?;
    let idx = WittIndex::new(n, p);
    let exps = contact_basis(n, p);
    let mut basis = Vec::with_capacity(exps.len());
    let mut labels = Vec::with_capacity(exps.len());
    let mut weights = Vec::with_capacity(exps.len());
    for a in &exps {
        basis.push(d_k(&TruncatedPolynomial::monomial(a, 1, field))?.to_w_coords(&idx));
        labels.push(format!("DK({})", mono_label(a)));
        weights.push(a.degree() as i64 + a.get(n - 1) as i64 - 2);
    }
    let mut acc = Accumulator::new(field, idx.dim());
    let table = table_from_embedding(field, idx.dim(), &basis, &labels, |x, y| {
        idx.bracket(field, &mut acc, x, y)
    })?;
    let mut alg = LieAlgebra::new(format!("K({n})"), field, labels, table)?;
    alg.set_grading(Some(Grading::new(weights)));
    alg.set_p_map(p_map_from_embedding(&idx, field, &basis));
    alg.set_embedding(Some(basis));
    alg.set_family(Some(spec));
    Ok(alg)
}
