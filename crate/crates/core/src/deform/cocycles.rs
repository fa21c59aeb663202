//! The explicit cocycles of the H^2 theorems for each family.

use crate::algebra::LieAlgebra;
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::families::{d_ij, Family, WittIndex};
use crate::linalg::SparseVec;
use crate::multiindex::MultiIndex;
use crate::poly::TruncatedPolynomial;
use crate::sparse::SpanSolver;

use super::squaring::squaring_element;

/// A cocycle together with the name it carries in the theorem statement.
#[derive(Clone, Debug)]
pub struct NamedCocycle {
    pub name: String,
    pub cochain: Cochain,
}

fn named(name: impl Into<String>, cochain: Cochain) -> NamedCocycle {
    NamedCocycle {
        name: name.into(),
        cochain,
    }
}

fn require(l: &LieAlgebra, family: Family) -> Result<(usize, u32)> {
    match l.family() {
        Some(s) if s.family == family => Ok((s.n, s.p)),
        other => Err(Error::WrongFamily {
            expected: family.to_string(),
            found: other.map_or_else(|| "unknown".to_string(), |s| s.family.to_string()),
        }),
    }
}

fn basis_index(l: &LieAlgebra, label: &str) -> Result<u32> {
    l.index_of(label)
        .map(|i| i as u32)
        .ok_or_else(|| Error::Construction(format!("no basis vector labelled {label}")))
}

fn sq_of_label(l: &LieAlgebra, label: &str, name: &str) -> Result<NamedCocycle> {
    let i = basis_index(l, label)?;
    Ok(named(format!("Sq({name})"), squaring_element(l, &[(i, 1)])))
}

// ----- W -----

/// `Sq(D_i)`, `i = 1..n`.
pub fn w_theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    let (n, _) = require(l, Family::W)?;
    (1..=n).map(|i| sq_of_label(l, &format!("D{i}"), &format!("D{i}"))).collect()
}

// ----- S -----

/// Coordinates in the S-basis of a W(n) vector, via the stored embedding.
fn s_coords(l: &LieAlgebra, solver: &mut SpanSolver, w: &SparseVec) -> Result<SparseVec> {
    solver
        .express(w)
        .ok_or_else(|| Error::Construction(format!("vector outside S: {w:?} in {}", l.name())))
}

fn s_solver(l: &LieAlgebra, n: usize, p: u32) -> Result<(WittIndex, SpanSolver)> {
    let idx = WittIndex::new(n, p);
    let emb = l
        .embedding()
        .ok_or_else(|| Error::Construction("S algebra lacks its W(n) embedding".into()))?;
    Ok((WittIndex::new(n, p), SpanSolver::new(l.field(), idx.dim(), emb.iter())))
}

/// `Theta(D_i, D_j) = d_ij(x^sigma)` on the basis vectors proportional to
/// `D_i`, `D_j`, zero on all other basis pairs.
pub fn theta_cocycle(l: &LieAlgebra) -> Result<Cochain> {
    let (n, p) = require(l, Family::S)?;
    let f = l.field();
    let (idx, mut solver) = s_solver(l, n, p)?;
    // basis vector u and scale s with e_u = s D_i
    let mut slots = Vec::with_capacity(n);
    for i in 0..n {
        let c = s_coords(l, &mut solver, &vec![(idx.index(0, i), 1)])?;
        match c.as_slice() {
            [(u, a)] => slots.push((*u, f.inv(*a))),
            _ => {
                return Err(Error::Construction(format!(
                    "D{} is not proportional to a basis vector of {}",
                    i + 1,
                    l.name()
                )))
            }
        }
    }
    let top = TruncatedPolynomial::monomial(&MultiIndex::top(n, p), 1, f);
    let mut c = Cochain::zero(l, 2);
    for i in 0..n {
        for j in i + 1..n {
            let v = s_coords(l, &mut solver, &d_ij(&top, i, j)?.to_w_coords(&idx))?;
            let (ui, si) = slots[i];
            let (uj, sj) = slots[j];
            let s = f.mul(si, sj);
            for (t, x) in v {
                c.add_value(&[ui, uj], t, f.mul(s, x))?;
            }
        }
    }
    Ok(c)
}

/// `Sq(D_i)` for `i = 1..n` and `Theta`.
pub fn s_theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    let (n, p) = require(l, Family::S)?;
    let (idx, mut solver) = s_solver(l, n, p)?;
    let mut out = Vec::new();
    for i in 0..n {
        let g = s_coords(l, &mut solver, &vec![(idx.index(0, i), 1)])?;
        out.push(named(format!("Sq(D{})", i + 1), squaring_element(l, &g)));
    }
    out.push(named("Theta", theta_cocycle(l)?));
    Ok(out)
}

// ----- H -----

/// Basis index of `D_H(x^a)`, or `None` for the excluded exponents 0, sigma.
fn h_index(a: &MultiIndex) -> Option<u32> {
    let r = a.rank();
    let top = a.p().pow(a.arity() as u32) - 1;
    if r == 0 || r == top {
        None
    } else {
        Some(r - 1)
    }
}

/// `D_H(f)` in the H-basis, dropping the constant and `x^sigma` terms.
fn h_coords(f: &TruncatedPolynomial) -> SparseVec {
    let top = f.field().p().pow(f.arity() as u32) - 1;
    f.terms()
        .filter(|&(r, _)| r != 0 && r != top)
        .map(|(r, c)| (r - 1, c))
        .collect()
}

fn h_exponents(l: &LieAlgebra, n: usize, p: u32) -> Vec<MultiIndex> {
    (0..l.dim()).map(|u| MultiIndex::from_rank(u as u32 + 1, n, p)).collect()
}

/// Conjugate slot (zero-based) and sign helpers for arity `2m`.
fn conj(j: usize, m: usize) -> usize {
    MultiIndex::conj_slot(j, m)
}

/// `Pi_ij(D_H(x^a), D_H(x^b)) = D_H(x_i'^(p-1) x_j'^(p-1) [D_i(x^a) D_j(x^b) - D_i(x^b) D_j(x^a)])`
/// with one-based `i < j`, `j != i'`.
pub fn pi_ij_cocycle(l: &LieAlgebra, i: usize, j: usize) -> Result<Cochain> {
    let (n, p) = require(l, Family::H)?;
    let m = n / 2;
    if n < 4 || i == 0 || j > n || i >= j || conj(i - 1, m) == j - 1 {
        return Err(Error::InvalidParameters(format!("Pi_ij needs 1 <= i < j <= {n}, j != i', got ({i}, {j})")));
    }
    let f = l.field();
    let (i0, j0) = (i - 1, j - 1);
    let mut pre = vec![0u32; n];
    pre[conj(i0, m)] += p - 1;
    pre[conj(j0, m)] += p - 1;
    let prefactor = TruncatedPolynomial::monomial(&MultiIndex::new(pre, p)?, 1, f);
    let exps = h_exponents(l, n, p);
    let mono: Vec<TruncatedPolynomial> = exps.iter().map(|a| TruncatedPolynomial::monomial(a, 1, f)).collect();
    let di: Vec<TruncatedPolynomial> = mono.iter().map(|x| x.partial(i0)).collect::<Result<_>>()?;
    let dj: Vec<TruncatedPolynomial> = mono.iter().map(|x| x.partial(j0)).collect::<Result<_>>()?;
    let mut err = None;
    let c = Cochain::from_pairs(l, |u, v| {
        let r = (|| -> Result<SparseVec> {
            if (di[u].is_zero() || dj[v].is_zero()) && (di[v].is_zero() || dj[u].is_zero()) {
                return Ok(Vec::new());
            }
            let inner = di[u].mul(&dj[v])?.sub(&di[v].mul(&dj[u])?)?;
            Ok(h_coords(&prefactor.mul(&inner)?))
        })();
        r.unwrap_or_else(|e| {
            err = Some(e);
            Vec::new()
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(c),
    }
}

/// `Pi_i` together with the basis pairs on which both clauses (or both
/// argument orders) contributed, which should never happen.
pub struct PiI {
    pub cochain: Cochain,
    pub overlaps: Vec<(u32, u32)>,
}

/// `Pi_i(D_H(x_i x^a), D_H(x_i' x^b)) = D_H(x^(a+b+(p-1)e_i+(p-1)e_i'))` and
/// `Pi_i(D_H(x_k), D_H(x^(sigma-(p-1)e_i-(p-1)e_i'))) = -sigma(k) D_H(x^(sigma-e_k'))`,
/// one-based `1 <= i <= m`.
pub fn pi_i_cocycle(l: &LieAlgebra, i: usize) -> Result<PiI> {
    let (n, p) = require(l, Family::H)?;
    let m = n / 2;
    if n < 4 || i == 0 || i > m {
        return Err(Error::InvalidParameters(format!("Pi_i needs 1 <= i <= {m}, got {i}")));
    }
    let f = l.field();
    let i0 = i - 1;
    let ic = conj(i0, m);
    let exps = h_exponents(l, n, p);
    let mut contributions: std::collections::BTreeMap<(u32, u32), usize> = Default::default();
    let mut c = Cochain::zero(l, 2);
    let record = |u: u32, v: u32, key: &mut std::collections::BTreeMap<(u32, u32), usize>| {
        *key.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    };
    // clause 1
    for (u, cu) in exps.iter().enumerate() {
        if cu.get(i0) == 0 {
            continue;
        }
        for (v, dv) in exps.iter().enumerate() {
            if u == v || dv.get(ic) == 0 {
                continue;
            }
            let mut e: Vec<u32> = (0..n).map(|s| cu.get(s) + dv.get(s)).collect();
            e[i0] += p - 2;
            e[ic] += p - 2;
            if e.iter().any(|&x| x > p - 1) {
                continue;
            }
            let Some(t) = h_index(&MultiIndex::new(e, p)?) else {
                continue;
            };
            c.add_value(&[u as u32, v as u32], t, 1)?;
            record(u as u32, v as u32, &mut contributions);
        }
    }
    // clause 2
    let mut e = vec![p - 1; n];
    e[i0] = 0;
    e[ic] = 0;
    let v = h_index(&MultiIndex::new(e, p)?).expect("proper exponent");
    for k in 0..n {
        let u = h_index(&MultiIndex::unit(n, k, p)).expect("degree one exponent");
        let mut target = vec![p - 1; n];
        target[conj(k, m)] -= 1;
        let t = h_index(&MultiIndex::new(target, p)?).expect("proper exponent");
        let val = if MultiIndex::slot_sign(k, m) > 0 { f.neg(1) } else { 1 };
        c.add_value(&[u, v], t, val)?;
        record(u, v, &mut contributions);
    }
    let overlaps = contributions.into_iter().filter(|&(_, k)| k > 1).map(|(pr, _)| pr).collect();
    Ok(PiI { cochain: c, overlaps })
}

/// Readings of the exponent in the `Phi` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiExponent {
    /// `a + b^ - delta - delta^`, exactly as printed.
    AsPrinted,
    /// `a + b - delta - delta^`.
    Corrected,
}

/// Multi-indices of degree `d` and arity `n` with entries below `p`.
fn of_degree(n: usize, d: u32, p: u32) -> Vec<MultiIndex> {
    MultiIndex::all(n, p).filter(|a| a.degree() == d).collect()
}

/// `Phi(D_H(x^a), D_H(x^b)) = sum binom(a, delta) binom(b, delta^) sigma(delta) delta! D_H(x^e)`
/// over `|delta| = 3`, `delta <= a`, `delta <= b^`, evaluated on ordered
/// basis pairs `a < b` and extended by antisymmetry.
pub fn phi_cocycle_with(l: &LieAlgebra, exponent: PhiExponent) -> Result<Cochain> {
    let (n, p) = require(l, Family::H)?;
    let m = n / 2;
    let f = l.field();
    let exps = h_exponents(l, n, p);
    let deltas: Vec<(MultiIndex, MultiIndex, u32)> = of_degree(n, 3, p)
        .into_iter()
        .map(|d| {
            let (sign, hat) = d.sign_conj(m).expect("even arity");
            let coef = f.mul(f.from_i64(sign), d.factorial(f));
            (d, hat, coef)
        })
        .collect();
    let conj_of = |a: &MultiIndex| a.sign_conj(m).expect("even arity").1;
    let binom = |a: &MultiIndex, b: &MultiIndex| crate::multiindex::multiindex_binom(a, b, f).unwrap_or(0);
    Ok(Cochain::from_pairs(l, |u, v| {
        let (a, b) = (&exps[u], &exps[v]);
        let bh = conj_of(b);
        let mut out: Vec<(u32, u32)> = Vec::new();
        for (d, dh, coef) in &deltas {
            if !d.le(a) || !d.le(&bh) {
                continue;
            }
            let second = match exponent {
                PhiExponent::AsPrinted => &bh,
                PhiExponent::Corrected => b,
            };
            let e: Vec<i64> = (0..n)
                .map(|s| a.get(s) as i64 + second.get(s) as i64 - d.get(s) as i64 - dh.get(s) as i64)
                .collect();
            if e.iter().any(|&x| x < 0 || x > p as i64 - 1) {
                continue;
            }
            let e = MultiIndex::new(e.iter().map(|&x| x as u32).collect(), p).expect("in range");
            let Some(t) = h_index(&e) else { continue };
            let c = f.mul(*coef, f.mul(binom(a, d), binom(b, dh)));
            if c != 0 {
                out.push((t, c));
            }
        }
        out.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (t, c) in out {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 = f.add(last.1, c),
                _ => merged.push((t, c)),
            }
        }
        merged.retain(|e| e.1 != 0);
        merged
    }))
}

/// `Phi` with the exponent reading that yields a cocycle.
pub fn phi_cocycle(l: &LieAlgebra) -> Result<Cochain> {
    phi_cocycle_with(l, PhiExponent::Corrected)
}

/// `Sq(D_H(x_i))`, then (n >= 4) `Pi_ij`, `Pi_i`, and finally `Phi`.
pub fn h_theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    let (n, _) = require(l, Family::H)?;
    let m = n / 2;
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(sq_of_label(l, &format!("DH(x{i})"), &format!("DH(x{i})"))?);
    }
    if n >= 4 {
        for i in 1..=n {
            for j in i + 1..=n {
                if conj(i - 1, m) != j - 1 {
                    out.push(named(format!("Pi_{i}{j}"), pi_ij_cocycle(l, i, j)?));
                }
            }
        }
        for i in 1..=m {
            let pi = pi_i_cocycle(l, i)?;
            if !pi.overlaps.is_empty() {
                return Err(Error::Construction(format!(
                    "Pi_{i}: clauses overlap on {} basis pairs",
                    pi.overlaps.len()
                )));
            }
            out.push(named(format!("Pi_{i}"), pi.cochain));
        }
    }
    out.push(named("Phi", phi_cocycle(l)?));
    Ok(out)
}

// ----- K, M -----

/// `Sq(D_K(x_i))` for `i = 1..2m` and `Sq(D_K(1))`.
pub fn k_theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    let (n, _) = require(l, Family::K)?;
    let mut out = Vec::new();
    for i in 1..n {
        out.push(sq_of_label(l, &format!("DK(x{i})"), &format!("DK(x{i})"))?);
    }
    out.push(sq_of_label(l, "DK(1)", "DK(1)")?);
    Ok(out)
}

/// `Sq(1)`, `Sq(D_1)`, `Sq(D_2)`, `Sq(D_1~)`, `Sq(D_2~)`.
pub fn m_theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    require(l, Family::M)?;
    ["1", "D1", "D2", "D1~", "D2~"]
        .iter()
        .map(|s| sq_of_label(l, s, s))
        .collect()
}

/// The listed classes of the theorem for the family of `l`; the classical
/// controls list none.
pub fn theorem_cocycles(l: &LieAlgebra) -> Result<Vec<NamedCocycle>> {
    let spec = l
        .family()
        .ok_or_else(|| Error::InvalidParameters(format!("{} has no family tag", l.name())))?;
    match spec.family {
        Family::W => w_theorem_cocycles(l),
        Family::S => s_theorem_cocycles(l),
        Family::H => h_theorem_cocycles(l),
        Family::K => k_theorem_cocycles(l),
        Family::M => m_theorem_cocycles(l),
        Family::Sl | Family::Psl => Ok(Vec::new()),
    }
}

