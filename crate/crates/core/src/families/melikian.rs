//! The Melikian algebra M = A(2) + W(2) + W~(2) in characteristic 5.

use crate::algebra::{LieAlgebra, TableBuilder};
use crate::error::{Error, Result};
use crate::families::witt::{mono_label, witt_label, DerivationOnA, WittIndex};
use crate::families::{Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::SparseVec;
use crate::multiindex::MultiIndex;
use crate::poly::TruncatedPolynomial;

/// Which summand a basis vector of M lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MelikianPart {
    /// `x^a` in A(2).
    A(MultiIndex),
    /// `x^a D_j` in W(2).
    W(MultiIndex, usize),
    /// `(x^a D_j)~` in the second copy of W(2).
    Tilde(MultiIndex, usize),
}

impl MelikianPart {
    /// Basis index: A(2) first (by rank), then W(2), then W~(2), each in the W order.
    pub fn index(&self) -> usize {
        match self {
            MelikianPart::A(a) => a.rank() as usize,
            MelikianPart::W(a, j) => 25 + 25 * j + a.rank() as usize,
            MelikianPart::Tilde(a, j) => 75 + 25 * j + a.rank() as usize,
        }
    }

    pub fn from_index(i: usize) -> Self {
        let mi = |r: usize| MultiIndex::from_rank(r as u32, 2, 5);
        match i {
            0..=24 => MelikianPart::A(mi(i)),
            25..=74 => MelikianPart::W(mi((i - 25) % 25), (i - 25) / 25),
            _ => MelikianPart::Tilde(mi((i - 75) % 25), (i - 75) / 25),
        }
    }

    pub fn label(&self) -> String {
        match self {
            MelikianPart::A(a) => mono_label(a),
            MelikianPart::W(a, j) => witt_label(a, *j),
            MelikianPart::Tilde(a, j) => format!("{}~", witt_label(a, *j)),
        }
    }
}

/// An element `f + D + E~` of M.
#[derive(Clone)]
struct Mel {
    a: TruncatedPolynomial,
    w: DerivationOnA,
    t: DerivationOnA,
}

impl Mel {
    fn zero(field: Field) -> Self {
        Mel {
            a: TruncatedPolynomial::zero(2, field),
            w: DerivationOnA::zero(2, field),
            t: DerivationOnA::zero(2, field),
        }
    }

    fn basis(i: usize, field: Field) -> Self {
        let mut e = Self::zero(field);
        match MelikianPart::from_index(i) {
            MelikianPart::A(a) => e.a = TruncatedPolynomial::monomial(&a, 1, field),
            MelikianPart::W(a, j) => e.w = DerivationOnA::basis(&a, j, field),
            MelikianPart::Tilde(a, j) => e.t = DerivationOnA::basis(&a, j, field),
        }
        e
    }

    fn coords(&self) -> SparseVec {
        let idx = WittIndex::new(2, 5);
        let mut out: SparseVec = self.a.terms().collect();
        out.extend(self.w.to_w_coords(&idx).into_iter().map(|(k, c)| (k + 25, c)));
        out.extend(self.t.to_w_coords(&idx).into_iter().map(|(k, c)| (k + 75, c)));
        out
    }
}

/// The bracket rules, extended bilinearly and by antisymmetry:
///
/// * `[D, E~] = [D, E]~ + 2 div(D) E~`
/// * `[D, f] = D(f) - 2 div(D) f`
/// * `[f1 D1~ + f2 D2~, g1 D1~ + g2 D2~] = f1 g2 - f2 g1`
/// * `[f, E~] = f E`
/// * `[f, g] = 2 (g D2(f) - f D2(g)) D1~ + 2 (f D1(g) - g D1(f)) D2~`
fn mel_bracket(x: &Mel, y: &Mel, field: Field) -> Result<Mel> {
    let neg = |v: u32| field.neg(v);
    let two = 2 % field.p();
    let mut out = Mel::zero(field);
    // W with W
    out.w = out.w.add(&x.w.bracket(&y.w)?)?;
    // W with W~ (both orders)
    let dw = |d: &DerivationOnA, e: &DerivationOnA| -> Result<DerivationOnA> {
        d.bracket(e)?.add(&e.times(&d.divergence()?)?.scale(two))
    };
    out.t = out.t.add(&dw(&x.w, &y.t)?)?;
    out.t = out.t.add(&dw(&y.w, &x.t)?.scale(neg(1)))?;
    // W with A (both orders)
    let da = |d: &DerivationOnA, f: &TruncatedPolynomial| -> Result<TruncatedPolynomial> {
        d.apply(f)?.sub(&d.divergence()?.mul(f)?.scale(two))
    };
    out.a = out.a.add(&da(&x.w, &y.a)?)?;
    out.a = out.a.sub(&da(&y.w, &x.a)?)?;
    // W~ with W~
    let tt = x.t.coeff(0).mul(y.t.coeff(1))?.sub(&x.t.coeff(1).mul(y.t.coeff(0))?)?;
    out.a = out.a.add(&tt)?;
    // A with W~ (both orders)
    out.w = out.w.add(&y.t.times(&x.a)?)?;
    out.w = out.w.add(&x.t.times(&y.a)?.scale(neg(1)))?;
    // A with A
    let (f, g) = (&x.a, &y.a);
    let c1 = g.mul(&f.partial(1)?)?.sub(&f.mul(&g.partial(1)?)?)?.scale(two);
    let c2 = f.mul(&g.partial(0)?)?.sub(&g.mul(&f.partial(0)?)?)?.scale(two);
    out.t = out
        .t
        .add(&DerivationOnA::times_partial(&c1, 0))?
        .add(&DerivationOnA::times_partial(&c2, 1))?;
    Ok(out)
}

/// Build M (p = 5 only). The Jacobi identity is checked on every basis
/// triple; a failure is reported with the triple and never patched.
pub fn build_melikian(p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(Family::M, 2, p);
    spec.validate()?;
    let field = Field::new(p)?;
    let elems: Vec<Mel> = (0..125).map(|i| Mel::basis(i, field)).collect();
    let labels: Vec<String> = (0..125).map(|i| MelikianPart::from_index(i).label()).collect();
    let mut table = TableBuilder::new(field, 125);
    for i in 0..125 {
        for j in i + 1..125 {
            let b = mel_bracket(&elems[i], &elems[j], field)?.coords();
            table.set(i, j, b)?;
        }
    }
    let mut alg = LieAlgebra::new("M", field, labels, table)?;
    if let Some((i, j, k)) = alg.jacobi_witness_exhaustive() {
        return Err(Error::Construction(format!(
            "Melikian rules violate Jacobi on ({}, {}, {})",
            alg.label(i),
            alg.label(j),
            alg.label(k)
        )));
    }
    alg.set_family(Some(spec));
    alg.set_grading(crate::grading::grading_solve(&alg));
    alg.set_p_map(crate::pmap::p_map_table_by_solve(&alg)?);
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for i in 0..125 {
            assert_eq!(MelikianPart::from_index(i).index(), i);
        }
        assert_eq!(MelikianPart::from_index(0).label(), "1");
        assert_eq!(MelikianPart::from_index(25).label(), "D1");
        assert_eq!(MelikianPart::from_index(100).label(), "D2~");
    }

    #[test]
    fn rule_for_x1d1_against_its_tilde() {
        // [x1D1, (x1D1)~] = [x1D1, x1D1]~ + 2 div(x1D1) (x1D1)~ = 2 (x1D1)~
        let f = Field::new(5).unwrap();
        let a = MultiIndex::new(vec![1, 0], 5).unwrap();
        let d = Mel::basis(MelikianPart::W(a.clone(), 0).index(), f);
        let e = Mel::basis(MelikianPart::Tilde(a.clone(), 0).index(), f);
        let b = mel_bracket(&d, &e, f).unwrap().coords();
        assert_eq!(b, vec![(MelikianPart::Tilde(a, 0).index() as u32, 2)]);
        let one = Mel::basis(0, f);
        assert!(mel_bracket(&one, &one, f).unwrap().coords().is_empty());
    }
}
