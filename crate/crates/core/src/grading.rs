//! Discovery of integer gradings from the structure constants.
//!
//! Every nonzero constant `c_ij^k` imposes `w(k) = w(i) + w(j)`. The weights
//! are propagated along these constraints as integer combinations of free
//! parameters (a fresh parameter is introduced whenever propagation stalls);
//! constraints that close a cycle become linear conditions on the parameters,
//! whose rational nullspace gives a basis of all gradings.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{Grading, LieAlgebra};

/// A basis of the space of integer gradings: `weights[x][b]` is the weight
/// of basis vector `x` under grading number `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingLattice {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
}

impl GradingLattice {
    pub fn grading(&self, b: usize) -> Vec<i64> {
        self.weights.iter().map(|w| w[b]).collect()
    }

    /// `sum_b c_b * grading_b`.
    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        self.weights
            .iter()
            .map(|w| w.iter().zip(coeffs).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Q {
    num: i128,
    den: i128,
}

impl Q {
    fn int(n: i128) -> Q {
        Q { num: n, den: 1 }
    }

    fn norm(num: i128, den: i128) -> Q {
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Q {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn sub(self, o: Q) -> Q {
        Q::norm(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Q) -> Q {
        Q::norm(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Q) -> Q {
        Q::norm(self.num * o.den, self.den * o.num)
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }
}

/// Integer basis of the rational nullspace of `rows` (each of length `ncols`).
fn integer_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| (0..ncols).map(|c| Q::int(*r.get(c).unwrap_or(&0) as i128)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let pv = m[row][col];
        for c in 0..ncols {
            m[row][c] = m[row][c].div(pv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..ncols {
                    m[r][c] = m[r][c].sub(f.mul(m[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Q::int(0); ncols];
        v[free] = Q::int(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = Q::int(0).sub(m[r][free]);
        }
        let lcm = v.iter().fold(1i128, |l, q| l / gcd(l, q.den) * q.den);
        let ints: Vec<i128> = v.iter().map(|q| q.num * (lcm / q.den)).collect();
        let g = ints.iter().fold(0i128, |g, &x| gcd(g, x)).max(1);
        out.push(ints.iter().map(|&x| (x / g) as i64).collect());
    }
    out
}

/// All integer gradings of `l`, as a lattice basis. Basis vectors that occur
/// in no nonzero structure constant get weight zero in every grading.
pub fn grading_lattice(l: &LieAlgebra) -> GradingLattice {
    let d = l.dim();
    let mut eqs: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
    for (i, j, v) in l.nonzero_brackets() {
        for &(k, _) in v {
            eqs.insert((i as u32, j as u32, k));
        }
    }
    let eqs: Vec<(u32, u32, u32)> = eqs.into_iter().collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (e, &(i, j, k)) in eqs.iter().enumerate() {
        for v in [i, j, k] {
            if adj[v as usize].last() != Some(&e) {
                adj[v as usize].push(e);
            }
        }
    }
    let mut expr: Vec<Option<Vec<i64>>> = vec![None; d];
    let mut nparams = 0usize;
    let mut done = vec![false; eqs.len()];
    let mut residuals: HashSet<Vec<i64>> = HashSet::new();

    let terms = |e: usize| -> Vec<(usize, i64)> {
        let (i, j, k) = eqs[e];
        let mut t: Vec<(usize, i64)> = Vec::new();
        for (v, c) in [(k, 1), (i, -1), (j, -1)] {
            match t.iter_mut().find(|(u, _)| *u == v as usize) {
                Some(slot) => slot.1 += c,
                None => t.push((v as usize, c)),
            }
        }
        t.retain(|&(_, c)| c != 0);
        t
    };

    for start in 0..d {
        if expr[start].is_some() {
            continue;
        }
        if adj[start].is_empty() {
            expr[start] = Some(Vec::new());
            continue;
        }
        let mut e = vec![0; nparams + 1];
        e[nparams] = 1;
        nparams += 1;
        expr[start] = Some(e);
        let mut work: Vec<usize> = adj[start].clone();
        while let Some(eq) = work.pop() {
            if done[eq] {
                continue;
            }
            let t = terms(eq);
            let unknown: Vec<(usize, i64)> = t.iter().copied().filter(|(v, _)| expr[*v].is_none()).collect();
            if unknown.len() >= 2 {
                continue;
            }
            let mut sum = vec![0i64; nparams];
            for &(v, c) in &t {
                if let Some(ev) = &expr[v] {
                    for (s, x) in sum.iter_mut().zip(ev) {
                        *s += c * x;
                    }
                }
            }
            done[eq] = true;
            match unknown.first() {
                None => {
                    while sum.last() == Some(&0) {
                        sum.pop();
                    }
                    if !sum.is_empty() {
                        residuals.insert(sum);
                    }
                }
                Some(&(u, c)) => {
                    // c * w_u + sum = 0 with c = +-1
                    expr[u] = Some(sum.iter().map(|x| -c * x).collect());
                    work.extend(adj[u].iter().copied().filter(|&e| !done[e]));
                }
            }
        }
    }
    let mut rows: Vec<Vec<i64>> = residuals.into_iter().collect();
    rows.sort();
    let basis = integer_nullspace(&rows, nparams);
    let weights = expr
        .iter()
        .map(|e| {
            let e = e.as_ref().unwrap();
            basis
                .iter()
                .map(|b| e.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    GradingLattice {
        rank: basis.len(),
        weights,
    }
}

/// First stored constant violating `w(k) = w(i) + w(j)`.
pub fn grading_violation(l: &LieAlgebra, weights: &[i64]) -> Option<(usize, usize, usize)> {
    l.nonzero_brackets().find_map(|(i, j, v)| {
        v.iter()
            .find(|&&(k, _)| weights[k as usize] != weights[i] + weights[j])
            .map(|&(k, _)| (i, j, k as usize))
    })
}

fn score(w: &[i64]) -> (usize, i64, Vec<i64>) {
    (
        w.iter().filter(|&&x| x < 0).count(),
        w.iter().map(|x| x.abs()).sum(),
        w.to_vec(),
    )
}

/// A single principal grading: among small integer combinations of the
/// lattice basis, the primitive one with the fewest negative weights, then
/// the smallest total absolute weight, then lexicographically first.
/// Abelian algebras get the zero grading; a non-abelian algebra with no
/// nonzero grading yields `None`.
pub fn grading_solve(l: &LieAlgebra) -> Option<Grading> {
    let lat = grading_lattice(l);
    if lat.rank == 0 {
        return if l.nonzero_constant_count() == 0 {
            Some(Grading::new(vec![0; l.dim()]))
        } else {
            None
        };
    }
    let r = lat.rank;
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    if r <= 4 {
        let total = 5usize.pow(r as u32);
        for code in 0..total {
            let mut c = code;
            candidates.push(
                (0..r)
                    .map(|_| {
                        let v = (c % 5) as i64 - 2;
                        c /= 5;
                        v
                    })
                    .collect(),
            );
        }
    } else {
        for a in 0..r {
            for b in a..r {
                for ca in -2i64..=2 {
                    for cb in -2i64..=2 {
                        let mut c = vec![0; r];
                        c[a] += ca;
                        c[b] += cb;
                        candidates.push(c);
                    }
                }
            }
        }
    }
    let mut best: Option<Vec<i64>> = None;
    for c in candidates {
        let w = lat.combine(&c);
        let g = w.iter().fold(0i128, |g, &x| gcd(g, x as i128));
        if g == 0 {
            continue;
        }
        let w: Vec<i64> = w.iter().map(|&x| x / g as i64).collect();
        if best.as_ref().is_none_or(|b| score(&w) < score(b)) {
            best = Some(w);
        }
    }
    best.map(Grading::new)
}

/// Eigenvalue vectors of the basis vectors whose adjoint action is diagonal
/// in the basis (and nonzero), deduplicated.
pub fn toral_weights(l: &LieAlgebra) -> Vec<Vec<u32>> {
    let d = l.dim();
    let mut out: Vec<Vec<u32>> = Vec::new();
    'outer: for t in 0..d {
        let mut lam = vec![0u32; d];
        for j in 0..d {
            let col = l.ad_basis_column(t, j);
            match col.as_slice() {
                [] => {}
                [(k, c)] if *k as usize == j => lam[j] = *c,
                _ => continue 'outer,
            }
        }
        if lam.iter().any(|&x| x != 0) && !out.contains(&lam) {
            out.push(lam);
        }
    }
    out
}
