//! The Chevalley-Eilenberg differential on adjoint cochains, in scatter
//! form: the image of each basis cochain is generated directly.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};

use super::cochain::{encode, Cochain};

/// Bracket data in the shapes the differential needs: for every basis
/// index `m`, the pairs `u < v` with a nonzero `e_m`-coefficient in
/// `[e_u, e_v]`.
pub struct DiffContext<'a> {
    l: &'a LieAlgebra,
    inverse: Vec<Vec<(u32, u32, u32)>>,
}

/// Merge duplicate keys of an unsorted entry list, dropping zeros.
pub fn merge_entries(field: crate::fp::Field, v: &mut Vec<(u64, u32)>) {
    v.sort_unstable_by_key(|e| e.0);
    let mut w = 0usize;
    for r in 0..v.len() {
        if w > 0 && v[w - 1].0 == v[r].0 {
            v[w - 1].1 = field.add(v[w - 1].1, v[r].1);
        } else {
            v[w] = v[r];
            w += 1;
        }
    }
    v.truncate(w);
    v.retain(|e| e.1 != 0);
}

impl<'a> DiffContext<'a> {
    pub fn new(l: &'a LieAlgebra) -> Self {
        let mut inverse = vec![Vec::new(); l.dim()];
        for (u, v, br) in l.nonzero_brackets() {
            for &(m, c) in br {
                inverse[m as usize].push((u as u32, v as u32, c));
            }
        }
        DiffContext { l, inverse }
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    /// Pairs producing `e_m`.
    pub fn producers(&self, m: usize) -> &[(u32, u32, u32)] {
        &self.inverse[m]
    }

    /// Unmerged image of the basis 1-cochain `e_a -> e_t` (scaled by `s`).
    pub fn d1_basis(&self, a: u32, t: u32, s: u32, out: &mut Vec<(u64, u32)>) {
        let l = self.l;
        let f = l.field();
        let d = l.dim();
        for c in 0..d as u32 {
            if c == a {
                continue;
            }
            let (neg, col) = l.basis_bracket(c as usize, t as usize);
            // c < a: +[e_c, e_t] on (c, a); c > a: -[e_c, e_t] on (a, c)
            let (pair, flip) = if c < a { ([c, a], false) } else { ([a, c], true) };
            let sign_neg = neg ^ flip;
            for &(k, v) in col {
                let v = f.mul(v, s);
                out.push((encode(d, &pair, k), if sign_neg { f.neg(v) } else { v }));
            }
        }
        for &(u, v, c) in &self.inverse[a as usize] {
            out.push((encode(d, &[u, v], t), f.neg(f.mul(c, s))));
        }
    }

    /// Unmerged image of the basis 2-cochain `(e_a, e_b) -> e_t`, `a < b`,
    /// scaled by `s`.
    pub fn d2_basis(&self, a: u32, b: u32, t: u32, s: u32, out: &mut Vec<(u64, u32)>) {
        debug_assert!(a < b);
        let l = self.l;
        let f = l.field();
        let d = l.dim();
        let neg_s = f.neg(s);
        // sum_i (-1)^i [x_i, psi(rest)]: x_i = c, rest = (a, b)
        for c in 0..d as u32 {
            if c == a || c == b {
                continue;
            }
            let (tri, pos) = if c < a {
                ([c, a, b], 0)
            } else if c < b {
                ([a, c, b], 1)
            } else {
                ([a, b, c], 2)
            };
            let (neg, col) = l.basis_bracket(c as usize, t as usize);
            let sgn = if neg ^ (pos == 1) { neg_s } else { s };
            for &(k, v) in col {
                out.push((encode(d, &tri, k), f.mul(v, sgn)));
            }
        }
        // sum_{i<j} (-1)^(i+j) psi([x_i, x_j], x_k), k the remaining slot:
        // (-1)^(i+j) = -(-1)^k. psi(e_a, e_b) = e_t, psi(e_b, e_a) = -e_t.
        for (m, other, base_neg) in [(a, b, false), (b, a, true)] {
            for &(u, v, c) in &self.inverse[m as usize] {
                if u == other || v == other {
                    continue;
                }
                let (tri, k) = if other < u {
                    ([other, u, v], 0)
                } else if other < v {
                    ([u, other, v], 1)
                } else {
                    ([u, v, other], 2)
                };
                // sign = -(-1)^k, times -1 when psi is evaluated as (b, a)
                let neg = (k % 2 == 0) ^ base_neg;
                let val = f.mul(c, s);
                out.push((encode(d, &tri, t), if neg { f.neg(val) } else { val }));
            }
        }
    }

    /// `d c` for a cochain of degree 1 or 2.
    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        if c.parent() != self.l.id() {
            return Err(Error::ParentMismatch);
        }
        let mut out = Vec::new();
        match c.degree() {
            1 => {
                for (tuple, t, v) in c.iter() {
                    self.d1_basis(tuple[0], t, v, &mut out);
                }
            }
            2 => {
                for (tuple, t, v) in c.iter() {
                    self.d2_basis(tuple[0], tuple[1], t, v, &mut out);
                }
            }
            q => return Err(Error::UnsupportedDegree(q)),
        }
        merge_entries(self.l.field(), &mut out);
        Ok(Cochain::from_keys(self.l, c.degree() + 1, out))
    }
}

/// `d c` for a cochain of degree 1 or 2.
pub fn differential(l: &LieAlgebra, c: &Cochain) -> Result<Cochain> {
    DiffContext::new(l).differential(c)
}

/// Outcome of a cocycle check: the first nonzero coordinate of `d c`
/// (tuple, target, value) when `c` is not closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub witness: Option<(Vec<u32>, u32, u32)>,
}

impl CocycleCheck {
    pub fn is_cocycle(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn is_cocycle(l: &LieAlgebra, c: &Cochain) -> Result<CocycleCheck> {
    if c.degree() != 2 {
        return Err(Error::UnsupportedDegree(c.degree()));
    }
    let dc = differential(l, c)?;
    let witness = dc.iter().next();
    Ok(CocycleCheck { witness })
}

/// The inner 1-cochain `ad(v)`: `e_j -> [v, e_j]`.
pub fn ad_cochain(l: &LieAlgebra, v: &[(u32, u32)]) -> Cochain {
    let mut c = Cochain::zero(l, 1);
    for j in 0..l.dim() {
        for (k, x) in l.bracket_sparse(v, &[(j as u32, 1)]) {
            c.add_key(encode(l.dim(), &[j as u32], k), x);
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_classical, build_h, build_w};
    use crate::families::Family;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct evaluation of the defining formula on a basis triple.
    fn d2_direct(l: &LieAlgebra, c: &Cochain, x: [u32; 3]) -> Vec<(u32, u32)> {
        let f = l.field();
        let mut acc = crate::linalg::Accumulator::new(f, l.dim());
        let ev = |a: u32, b: u32| c.basis_value(&[a, b]);
        for (i, sign) in [(0usize, 1u32), (1, f.p() - 1), (2, 1)] {
            let rest: Vec<u32> = (0..3).filter(|&k| k != i).map(|k| x[k]).collect();
            let v = l.bracket_sparse(&[(x[i], 1)], &ev(rest[0], rest[1]));
            acc.add_scaled(&v, sign);
        }
        for (i, j, k, sign) in [(0, 1, 2, f.p() - 1), (0, 2, 1, 1), (1, 2, 0, f.p() - 1)] {
            let br = l.bracket_sparse(&[(x[i], 1)], &[(x[j], 1)]);
            for (m, cm) in br {
                acc.add_scaled(&ev(m, x[k]), f.mul(cm, sign));
            }
        }
        acc.drain()
    }

    fn random_cochain(l: &LieAlgebra, q: usize, n: usize, rng: &mut impl Rng) -> Cochain {
        let mut c = Cochain::zero(l, q);
        let d = l.dim() as u32;
        for _ in 0..n {
            let tuple: Vec<u32> = (0..q).map(|_| rng.random_range(0..d)).collect();
            let _ = c.add_value(&tuple, rng.random_range(0..d), rng.random_range(1..l.p()));
        }
        c
    }

    #[test]
    fn scatter_matches_direct_formula() {
        let l = build_h(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = random_cochain(&l, 2, 40, &mut rng);
        let dc = differential(&l, &c).unwrap();
        let d = l.dim() as u32;
        for x0 in 0..d {
            for x1 in x0 + 1..d {
                for x2 in x1 + 1..d {
                    assert_eq!(dc.basis_value(&[x0, x1, x2]), d2_direct(&l, &c, [x0, x1, x2]));
                }
            }
        }
    }

    #[test]
    fn d_squared_is_zero() {
        for l in [build_w(2, 5).unwrap(), build_classical(Family::Sl, 3, 5).unwrap()] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..5 {
                let c = random_cochain(&l, 1, 30, &mut rng);
                let dd = differential(&l, &differential(&l, &c).unwrap()).unwrap();
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn inner_derivations_are_closed() {
        let l = build_w(1, 7).unwrap();
        let c = ad_cochain(&l, &[(2, 3), (4, 1)]);
        assert!(differential(&l, &c).unwrap().is_zero());
    }

    #[test]
    fn random_two_cochain_is_not_closed() {
        let l = build_w(1, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut c = Cochain::zero(&l, 2);
        for i in 0..5u32 {
            for j in i + 1..5 {
                for t in 0..5 {
                    c.add_value(&[i, j], t, rng.random_range(0..5)).unwrap();
                }
            }
        }
        let chk = is_cocycle(&l, &c).unwrap();
        assert!(!chk.is_cocycle());
        assert!(is_cocycle(&l, &Cochain::zero(&l, 2)).unwrap().is_cocycle());
    }
}
