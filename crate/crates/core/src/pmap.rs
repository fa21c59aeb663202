//! p-maps: solving `ad(y) = ad(x)^p`, extending a basis table to the whole
//! algebra, and checking the three axioms of a restricted structure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{sparse_axpy, Accumulator, SparseVec};
use crate::sparse::SpanSolver;

/// `ad(x)^e (v)`.
pub fn ad_power_apply(l: &LieAlgebra, x: &[(u32, u32)], e: u32, v: &[(u32, u32)]) -> SparseVec {
    let mut v = v.to_vec();
    for _ in 0..e {
        if v.is_empty() {
            break;
        }
        v = l.bracket_sparse(x, &v);
    }
    v
}

/// Columns of `ad(x)^e`.
pub fn ad_power_columns(l: &LieAlgebra, x: &[(u32, u32)], e: u32) -> Vec<SparseVec> {
    (0..l.dim())
        .map(|j| ad_power_apply(l, x, e, &[(j as u32, 1)]))
        .collect()
}

/// Flatten a list of columns into one vector indexed by `col * dim + row`.
fn vectorize(cols: &[SparseVec], dim: usize) -> SparseVec {
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        out.extend(c.iter().map(|&(i, v)| ((j * dim) as u32 + i, v)));
    }
    out
}

/// Reusable solver for `ad(y) = M` over the span of the `ad(e_k)`.
pub struct InnerDerivationSolver {
    dim: usize,
    solver: SpanSolver,
}

impl InnerDerivationSolver {
    pub fn new(l: &LieAlgebra) -> Self {
        let d = l.dim();
        let gens: Vec<SparseVec> = (0..d)
            .map(|k| {
                let cols: Vec<SparseVec> = (0..d).map(|j| l.ad_basis_column(k, j)).collect();
                vectorize(&cols, d)
            })
            .collect();
        InnerDerivationSolver {
            dim: d,
            solver: SpanSolver::new(l.field(), d * d, gens.iter()),
        }
    }

    /// Some `y` with `ad(y)` equal to the operator given by its columns.
    pub fn solve(&mut self, columns: &[SparseVec]) -> Option<SparseVec> {
        let target = vectorize(columns, self.dim);
        self.solver.express(&target)
    }
}

/// `x^[p]`, found as the (any, if the center is nonzero) `y` with
/// `ad(y) = ad(x)^p`. `Ok(None)` means `ad(x)^p` is not inner.
pub fn p_map_solve(l: &LieAlgebra, x: &Element) -> Result<Option<Element>> {
    if x.parent() != l.id() {
        return Err(Error::ParentMismatch);
    }
    let cols = ad_power_columns(l, &x.to_sparse(), l.p());
    let mut s = InnerDerivationSolver::new(l);
    Ok(s.solve(&cols).map(|y| l.element_from_sparse(&y)))
}

/// p-map table on the basis by solving for each `e_k^[p]`; `Ok(None)` if
/// some basis vector has a non-inner p-th power.
pub fn p_map_table_by_solve(l: &LieAlgebra) -> Result<Option<Vec<SparseVec>>> {
    let mut s = InnerDerivationSolver::new(l);
    let mut out = Vec::with_capacity(l.dim());
    for k in 0..l.dim() {
        let cols = ad_power_columns(l, &[(k as u32, 1)], l.p());
        match s.solve(&cols) {
            Some(y) => out.push(y),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `s_1 .. s_{p-1}` from the summation over maps `u: {1..p-1} -> {0,1}`:
/// `s_i = -(1/i) sum_{u with i zeros} ad x_u(1) ... ad x_u(p-1) (x_1)`.
pub fn s_terms_summation(l: &LieAlgebra, x0: &[(u32, u32)], x1: &[(u32, u32)]) -> Vec<SparseVec> {
    let f = l.field();
    let p = l.p();
    let m = p - 1;
    let mut sums: Vec<Accumulator> = (0..p).map(|_| Accumulator::new(f, l.dim())).collect();
    for u in 0u32..(1 << m) {
        // bit t of u set means x_u(t+1) = x_1
        let mut v = x1.to_vec();
        for t in (0..m).rev() {
            let x = if u >> t & 1 == 1 { x1 } else { x0 };
            v = l.bracket_sparse(x, &v);
            if v.is_empty() {
                break;
            }
        }
        let zeros = m - u.count_ones();
        sums[zeros as usize].add_scaled(&v, 1);
    }
    (1..p)
        .map(|i| {
            let c = f.neg(f.inv(i));
            sums[i as usize].drain().into_iter().map(|(k, v)| (k, f.mul(v, c))).collect()
        })
        .collect()
}

/// `s_1 .. s_{p-1}` by coefficient extraction:
/// `sum_i i s_i t^(i-1) = ad(t x_0 + x_1)^(p-1) (x_0)`.
pub fn s_terms_extraction(l: &LieAlgebra, x0: &[(u32, u32)], x1: &[(u32, u32)]) -> Vec<SparseVec> {
    let f = l.field();
    let p = l.p() as usize;
    // coefficient of t^k
    let mut poly: Vec<SparseVec> = vec![x0.to_vec()];
    for _ in 0..p - 1 {
        let mut next: Vec<SparseVec> = vec![Vec::new(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            next[k] = sparse_axpy(f, &next[k], &l.bracket_sparse(x1, c), 1);
            next[k + 1] = sparse_axpy(f, &next[k + 1], &l.bracket_sparse(x0, c), 1);
        }
        poly = next;
    }
    (1..p)
        .map(|i| {
            let c = f.inv(i as u32);
            poly[i - 1].iter().map(|&(k, v)| (k, f.mul(v, c))).collect()
        })
        .collect()
}

/// Extend a basis p-map table to an arbitrary vector: `(c e_k)^[p] =
/// c^p e_k^[p]` and the sum formula folded over the coordinates.
pub fn p_power(l: &LieAlgebra, table: &[SparseVec], x: &[(u32, u32)]) -> SparseVec {
    let f = l.field();
    let p = l.p() as u64;
    let mut acc: SparseVec = Vec::new();
    let mut acc_p: SparseVec = Vec::new();
    for &(k, c) in x {
        let term = [(k, c)];
        acc_p = sparse_axpy(f, &acc_p, &table[k as usize], f.pow(c, p));
        if !acc.is_empty() {
            for s in s_terms_extraction(l, &acc, &term) {
                acc_p = sparse_axpy(f, &acc_p, &s, 1);
            }
        }
        acc = sparse_axpy(f, &acc, &term, 1);
    }
    acc_p
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub checked: usize,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAxiomReport {
    /// `ad(e^[p]) = ad(e)^p` on every basis vector.
    pub axiom1: AxiomCheck,
    /// `(a x)^[p] = a^p x^[p]`.
    pub axiom2: AxiomCheck,
    /// Sum formula with the summation form of `s_i`.
    pub axiom3: AxiomCheck,
    /// Summation form against coefficient extraction.
    pub s_crosscheck: AxiomCheck,
}

impl PAxiomReport {
    pub fn passed(&self) -> bool {
        self.axiom1.passed() && self.axiom2.passed() && self.axiom3.passed() && self.s_crosscheck.passed()
    }
}

fn show(l: &LieAlgebra, v: &[(u32, u32)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let f = l.field();
    v.iter()
        .map(|&(k, c)| format!("{}*{}", f.to_signed(c), l.label(k as usize)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn random_sparse(l: &LieAlgebra, rng: &mut impl Rng) -> SparseVec {
    l.random_element(rng).to_sparse()
}

/// Check the three restricted-structure axioms for a basis table.
pub fn verify_p_axioms(l: &LieAlgebra, table: &[SparseVec], samples: usize, seed: u64) -> Result<PAxiomReport> {
    if table.len() != l.dim() {
        return Err(Error::InvalidParameters(format!(
            "p-map table has {} entries, algebra has dimension {}",
            table.len(),
            l.dim()
        )));
    }
    let f = l.field();
    let p = l.p();
    let d = l.dim();

    let mut axiom1 = AxiomCheck { checked: 0, witness: None };
    'basis: for k in 0..d {
        axiom1.checked += 1;
        for j in 0..d {
            let lhs = l.bracket_sparse(&table[k], &[(j as u32, 1)]);
            let rhs = ad_power_apply(l, &[(k as u32, 1)], p, &[(j as u32, 1)]);
            if lhs != rhs {
                axiom1.witness = Some(format!(
                    "ad({}^[p]) and ad({})^p differ on {}: {} vs {}",
                    l.label(k),
                    l.label(k),
                    l.label(j),
                    show(l, &lhs),
                    show(l, &rhs)
                ));
                break 'basis;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut axiom2 = AxiomCheck { checked: 0, witness: None };
    let mut axiom3 = AxiomCheck { checked: 0, witness: None };
    let mut s_cross = AxiomCheck { checked: 0, witness: None };
    for _ in 0..samples {
        let a = rng.random_range(0..p);
        let x = random_sparse(l, &mut rng);
        let ax: SparseVec = x.iter().filter(|_| a != 0).map(|&(k, c)| (k, f.mul(a, c))).collect();
        let lhs = p_power(l, table, &ax);
        let px = p_power(l, table, &x);
        let ap = f.pow(a, p as u64);
        let rhs: SparseVec = px.iter().filter(|_| ap != 0).map(|&(k, c)| (k, f.mul(ap, c))).collect();
        axiom2.checked += 1;
        if axiom2.witness.is_none() && lhs != rhs {
            axiom2.witness = Some(format!("a = {a}, x = {}", show(l, &x)));
        }

        let x0 = random_sparse(l, &mut rng);
        let x1 = random_sparse(l, &mut rng);
        let sum = sparse_axpy(f, &x0, &x1, 1);
        let lhs = p_power(l, table, &sum);
        let summ = s_terms_summation(l, &x0, &x1);
        let mut rhs = sparse_axpy(f, &p_power(l, table, &x0), &p_power(l, table, &x1), 1);
        for s in &summ {
            rhs = sparse_axpy(f, &rhs, s, 1);
        }
        axiom3.checked += 1;
        if axiom3.witness.is_none() && lhs != rhs {
            axiom3.witness = Some(format!("x0 = {}, x1 = {}", show(l, &x0), show(l, &x1)));
        }
        let extr = s_terms_extraction(l, &x0, &x1);
        s_cross.checked += 1;
        if s_cross.witness.is_none() {
            if let Some(i) = (0..summ.len()).find(|&i| summ[i] != extr[i]) {
                s_cross.witness = Some(format!(
                    "s_{} differs for x0 = {}, x1 = {}",
                    i + 1,
                    show(l, &x0),
                    show(l, &x1)
                ));
            }
        }
    }
    Ok(PAxiomReport {
        axiom1,
        axiom2,
        axiom3,
        s_crosscheck: s_cross,
    })
}
