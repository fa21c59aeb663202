//! Simplicity of a Lie algebra as irreducibility of its adjoint module,
//! decided by the MeatAxe with Norton's criterion.
//!
//! For a random element `a` of the associative algebra generated by the
//! `ad(e_i)` and an eigenvalue `lambda` with `dim ker(a - lambda) = 1`: if a
//! kernel vector spins up to a proper subspace, that subspace is an ideal;
//! otherwise, if a kernel vector of the transpose spins up to a proper
//! subspace, its annihilator is an ideal; if both spins fill the space the
//! module is irreducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LieAlgebra;
use crate::linalg::{dense_to_sparse, DenseMatrix, Subspace};

/// Algebras above this dimension are not run through the dense MeatAxe.
pub const MEATAXE_DIM_CAP: usize = 1200;

#[derive(Clone, Debug)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero ideal.
    NotSimple(Subspace),
    /// No certificate within the attempt budget.
    Undecided,
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// `ad(x)^T w`: coordinate `j` is `w . [x, e_j]`.
fn ad_transpose(l: &LieAlgebra, x: usize, w: &[u32]) -> Vec<u32> {
    let f = l.field();
    (0..l.dim())
        .map(|j| {
            l.ad_basis_column(x, j)
                .iter()
                .fold(0, |s, &(k, c)| f.add(s, f.mul(c, w[k as usize])))
        })
        .collect()
}

/// Span of `v` under all `ad(e_i)^T`.
fn spin_transpose(l: &LieAlgebra, v: Vec<u32>) -> Subspace {
    let d = l.dim();
    let mut s = Subspace::zero(l.field(), d);
    let mut queue = Vec::new();
    if s.insert(v.clone()) {
        queue.push(v);
    }
    while let Some(v) = queue.pop() {
        for i in 0..d {
            let w = ad_transpose(l, i, &v);
            if s.insert(w.clone()) {
                queue.push(w);
            }
            if s.dim() == d {
                return s;
            }
        }
    }
    s
}

fn ad_dense(l: &LieAlgebra, x: &[(u32, u32)]) -> DenseMatrix {
    let d = l.dim();
    let mut m = DenseMatrix::zeros(l.field(), d, d);
    for (j, col) in l.ad_columns(x).into_iter().enumerate() {
        for (k, c) in col {
            m.set(k as usize, j, c);
        }
    }
    m
}

fn random_sparse(l: &LieAlgebra, rng: &mut impl Rng) -> Vec<(u32, u32)> {
    (0..l.dim() as u32)
        .filter_map(|i| {
            let c = rng.random_range(0..l.p());
            (c != 0).then_some((i, c))
        })
        .collect()
}

/// Decide simplicity; `attempts` random algebra elements are tried before
/// giving up.
pub fn is_simple(l: &LieAlgebra, seed: u64, attempts: usize) -> Simplicity {
    let d = l.dim();
    let f = l.field();
    if d < 2 {
        return Simplicity::Undecided;
    }
    let z = l.center();
    if z.dim() == d {
        let mut e0 = vec![0; d];
        e0[0] = 1;
        return Simplicity::NotSimple(Subspace::spanned_by(f, d, [e0]));
    }
    if z.dim() > 0 {
        return Simplicity::NotSimple(z);
    }
    let derived = l.derived_subalgebra();
    if derived.dim() < d {
        return Simplicity::NotSimple(derived);
    }
    if d > MEATAXE_DIM_CAP {
        return Simplicity::Undecided;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let x = random_sparse(l, &mut rng);
        let y = random_sparse(l, &mut rng);
        let a = ad_dense(l, &x).mul(&ad_dense(l, &y)).add(&ad_dense(l, &random_sparse(l, &mut rng)));
        for lambda in 0..l.p() {
            let shifted = a.add(&DenseMatrix::identity(f, d).scale(f.neg(lambda)));
            let ker = shifted.nullspace();
            if ker.len() != 1 {
                continue;
            }
            let sub = l.ideal_closure_sparse(&dense_to_sparse(&ker[0]));
            if sub.dim() < d {
                return Simplicity::NotSimple(sub);
            }
            let kt = shifted.transpose().nullspace();
            let dual = spin_transpose(l, kt[0].clone());
            if dual.dim() < d {
                // annihilator of the dual submodule
                let m = DenseMatrix::from_rows(f, dual.basis());
                return Simplicity::NotSimple(Subspace::spanned_by(f, d, m.nullspace()));
            }
            return Simplicity::Simple;
        }
    }
    Simplicity::Undecided
}

/// Every ideal certificate must be proper, nonzero and ad-stable.
pub fn check_ideal(l: &LieAlgebra, s: &Subspace) -> bool {
    let d = l.dim();
    s.dim() > 0 && s.dim() < d && l.is_ideal(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_classical, build_gl, build_w, Family};

    #[test]
    fn w1_is_simple() {
        for p in [5, 7] {
            assert!(is_simple(&build_w(1, p).unwrap(), 1, 20).is_simple());
        }
    }

    #[test]
    fn sl2_is_simple() {
        assert!(is_simple(&build_classical(Family::Sl, 2, 5).unwrap(), 1, 20).is_simple());
    }

    #[test]
    fn gl2_has_the_scalars() {
        let l = build_gl(2, 5).unwrap();
        match is_simple(&l, 1, 20) {
            Simplicity::NotSimple(s) => {
                assert!(check_ideal(&l, &s));
                assert_eq!(s, l.center());
                assert_eq!(s.dim(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sl5_mod_5_is_not_simple() {
        let l = build_classical(Family::Sl, 5, 5).unwrap();
        match is_simple(&l, 1, 20) {
            Simplicity::NotSimple(s) => assert!(check_ideal(&l, &s)),
            other => panic!("{other:?}"),
        }
    }
}
