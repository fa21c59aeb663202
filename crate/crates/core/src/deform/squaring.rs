//! The squaring operator `Sq(D)(x, y) = sum_i [D^i x, D^(p-i) y] / (i! (p-i)!)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LieAlgebra;
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};

fn apply(l: &LieAlgebra, cols: &[SparseVec], v: &[(u32, u32)]) -> SparseVec {
    let mut acc = Accumulator::new(l.field(), l.dim());
    for &(j, c) in v {
        acc.add_scaled(&cols[j as usize], c);
    }
    acc.drain()
}

/// A basis pair `(i, j)` where `D` breaks the Leibniz rule, checking all
/// pairs when `dim <= 130` and `samples` random pairs otherwise.
pub fn derivation_witness(l: &LieAlgebra, cols: &[SparseVec], samples: usize, seed: u64) -> Option<(usize, usize)> {
    let d = l.dim();
    let f = l.field();
    let check = |i: usize, j: usize| {
        let lhs = apply(l, cols, &l.ad_basis_column(i, j));
        let r1 = l.bracket_sparse(&cols[i], &[(j as u32, 1)]);
        let r2 = l.bracket_sparse(&[(i as u32, 1)], &cols[j]);
        crate::linalg::sparse_axpy(f, &r1, &r2, 1) == lhs
    };
    if d <= 130 {
        for i in 0..d {
            for j in i + 1..d {
                if !check(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| (rng.random_range(0..d), rng.random_range(0..d)))
            .find(|&(i, j)| !check(i, j))
    }
}

fn squaring_unchecked(l: &LieAlgebra, cols: &[SparseVec]) -> Cochain {
    let f = l.field();
    let p = l.p() as usize;
    let d = l.dim();
    // powers[i][j] = D^i e_j
    let mut powers: Vec<Vec<SparseVec>> = vec![(0..d as u32).map(|j| vec![(j, 1)]).collect()];
    for i in 1..p {
        let next = powers[i - 1].iter().map(|v| apply(l, cols, v)).collect();
        powers.push(next);
    }
    let coef: Vec<u32> = (0..p)
        .map(|i| match i {
            0 => 0,
            _ => f.inv(f.mul(f.factorial(i as u32), f.factorial((p - i) as u32))),
        })
        .collect();
    let mut acc = Accumulator::new(f, d);
    Cochain::from_pairs(l, |a, b| {
        for i in 1..p {
            let x = &powers[i][a];
            let y = &powers[p - i][b];
            if x.is_empty() || y.is_empty() {
                continue;
            }
            for &(u, cu) in x {
                for &(v, cv) in y {
                    if u != v {
                        l.add_basis_bracket(&mut acc, u as usize, v as usize, f.mul(coef[i], f.mul(cu, cv)));
                    }
                }
            }
        }
        acc.drain()
    })
}

/// `Sq(D)` for a derivation given by its columns `D(e_j)`.
pub fn squaring(l: &LieAlgebra, cols: &[SparseVec], seed: u64) -> Result<Cochain> {
    if cols.len() != l.dim() {
        return Err(Error::ArityMismatch {
            left: cols.len(),
            right: l.dim(),
        });
    }
    if let Some((i, j)) = derivation_witness(l, cols, 500, seed) {
        return Err(Error::NotDerivation(format!(
            "Leibniz rule fails on ({}, {})",
            l.label(i),
            l.label(j)
        )));
    }
    Ok(squaring_unchecked(l, cols))
}

/// `Sq(gamma) = Sq(ad gamma)`.
pub fn squaring_element(l: &LieAlgebra, gamma: &[(u32, u32)]) -> Cochain {
    squaring_unchecked(l, &l.ad_columns(gamma))
}
