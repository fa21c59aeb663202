//! Infinitesimal deformations `[x, y]' = [x, y] + eps f(x, y)` over the dual
//! numbers `F[eps]/(eps^2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LieAlgebra, TableBuilder};
use crate::cohomology::{coboundary_solve, CoboundaryResult, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{sparse_axpy, Accumulator, SparseVec};

/// An element `x0 + eps x1`.
pub type DualElement = (SparseVec, SparseVec);

/// `L tensor F[eps]/(eps^2)` with the bracket deformed by a 2-cochain.
pub struct DualNumberAlgebra<'a> {
    base: &'a LieAlgebra,
    cocycle: Cochain,
}

/// Deform `l` by the 2-cochain `f`.
pub fn deform<'a>(l: &'a LieAlgebra, f: &Cochain) -> Result<DualNumberAlgebra<'a>> {
    if f.parent() != l.id() {
        return Err(Error::ParentMismatch);
    }
    if f.degree() != 2 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    Ok(DualNumberAlgebra {
        base: l,
        cocycle: f.clone(),
    })
}

impl<'a> DualNumberAlgebra<'a> {
    pub fn base(&self) -> &'a LieAlgebra {
        self.base
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    /// `f(x, y)` on sparse arguments.
    pub fn eval(&self, x: &[(u32, u32)], y: &[(u32, u32)]) -> SparseVec {
        let fl = self.base.field();
        let mut acc = Accumulator::new(fl, self.base.dim());
        for &(i, a) in x {
            for &(j, b) in y {
                if i != j {
                    acc.add_scaled(&self.cocycle.basis_value(&[i, j]), fl.mul(a, b));
                }
            }
        }
        acc.drain()
    }

    /// `[x0 + eps x1, y0 + eps y1]' = [x0, y0] + eps ([x0, y1] + [x1, y0] + f(x0, y0))`.
    pub fn bracket(&self, x: &DualElement, y: &DualElement) -> DualElement {
        let l = self.base;
        let fl = l.field();
        let zero = l.bracket_sparse(&x.0, &y.0);
        let mut one = l.bracket_sparse(&x.0, &y.1);
        one = sparse_axpy(fl, &one, &l.bracket_sparse(&x.1, &y.0), 1);
        one = sparse_axpy(fl, &one, &self.eval(&x.0, &y.0), 1);
        (zero, one)
    }

    /// Cyclic Jacobi sum on a triple.
    pub fn jacobi_defect(&self, x: &DualElement, y: &DualElement, z: &DualElement) -> DualElement {
        let fl = self.base.field();
        let mut out: DualElement = (Vec::new(), Vec::new());
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let t = self.bracket(&self.bracket(a, b), c);
            out.0 = sparse_axpy(fl, &out.0, &t.0, 1);
            out.1 = sparse_axpy(fl, &out.1, &t.1, 1);
        }
        out
    }

    fn basis_defect(&self, i: usize, j: usize, k: usize) -> DualElement {
        let e = |i: usize| -> DualElement { (vec![(i as u32, 1)], Vec::new()) };
        self.jacobi_defect(&e(i), &e(j), &e(k))
    }

    /// First triple `(x, y, z)` of `L`-basis vectors with nonzero defect.
    /// Triples involving `eps`-multiples reduce to the Jacobi identity of `L`
    /// and are skipped. All triples when `dim <= 130`, `samples` random ones
    /// otherwise.
    pub fn jacobi_witness(&self, samples: usize, seed: u64) -> Option<(usize, usize, usize)> {
        let d = self.base.dim();
        let bad = |i: usize, j: usize, k: usize| {
            let v = self.basis_defect(i, j, k);
            !v.0.is_empty() || !v.1.is_empty()
        };
        if d <= 130 {
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        if bad(i, j, k) {
                            return Some((i, j, k));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(0..d)))
                .find(|&(i, j, k)| bad(i, j, k))
        }
    }

    /// The deformed algebra as an ordinary Lie algebra of dimension `2 dim L`
    /// over `F`, basis `e_i` then `eps e_i`.
    pub fn to_lie_algebra(&self) -> Result<LieAlgebra> {
        let l = self.base;
        let d = l.dim();
        let mut table = TableBuilder::new(l.field(), 2 * d);
        for i in 0..d {
            for j in i + 1..d {
                let b = l.stored_bracket(i, j).to_vec();
                let mut v = b.clone();
                v.extend(self.cocycle.basis_value(&[i as u32, j as u32]).into_iter().map(|(k, c)| (k + d as u32, c)));
                table.set(i, j, v)?;
            }
            for j in 0..d {
                if i == j {
                    continue;
                }
                // [e_i, eps e_j] = eps [e_i, e_j]
                let col: SparseVec = l.ad_basis_column(i, j).into_iter().map(|(k, c)| (k + d as u32, c)).collect();
                table.set(i, j + d, col)?;
            }
        }
        let labels = l
            .labels()
            .iter()
            .cloned()
            .chain(l.labels().iter().map(|s| format!("eps*{s}")))
            .collect();
        LieAlgebra::new(format!("{}[eps]", l.name()), l.field(), labels, table)
    }
}

/// `id + eps phi`, an isomorphism `L_f -> L_g` when `d phi = f - g`.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub phi: Cochain,
    /// Basis pairs on which `Psi([x, y]_f) = [Psi x, Psi y]_g` was checked.
    pub checked_pairs: usize,
}

/// First basis pair `(i, j)` where `id + eps phi` fails to intertwine the
/// deformed brackets.
fn isomorphism_witness(l: &LieAlgebra, f: &Cochain, g: &Cochain, phi: &Cochain) -> Option<(usize, usize)> {
    let fl = l.field();
    let d = l.dim();
    let ph = |v: &[(u32, u32)]| -> SparseVec {
        let mut acc = Accumulator::new(fl, d);
        for &(a, c) in v {
            acc.add_scaled(&phi.basis_value(&[a]), c);
        }
        acc.drain()
    };
    let lf = DualNumberAlgebra { base: l, cocycle: f.clone() };
    let lg = DualNumberAlgebra { base: l, cocycle: g.clone() };
    let psi = |v: &DualElement| -> DualElement { (v.0.clone(), sparse_axpy(fl, &v.1, &ph(&v.0), 1)) };
    for i in 0..d {
        for j in i + 1..d {
            let x: DualElement = (vec![(i as u32, 1)], Vec::new());
            let y: DualElement = (vec![(j as u32, 1)], Vec::new());
            if psi(&lf.bracket(&x, &y)) != lg.bracket(&psi(&x), &psi(&y)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Decide whether `L_f` and `L_g` are equivalent deformations. On success the
/// map `id + eps phi` has been checked on every basis pair.
pub fn deformation_equiv(l: &LieAlgebra, f: &Cochain, g: &Cochain) -> Result<Option<Isomorphism>> {
    let diff = f.sub(g)?;
    match coboundary_solve(l, &diff)? {
        CoboundaryResult::NotCoboundary(_) => Ok(None),
        CoboundaryResult::Coboundary(phi) => {
            if let Some((i, j)) = isomorphism_witness(l, f, g, &phi) {
                return Err(Error::Construction(format!(
                    "solved phi fails to intertwine on ({}, {})",
                    l.label(i),
                    l.label(j)
                )));
            }
            let d = l.dim();
            Ok(Some(Isomorphism {
                phi,
                checked_pairs: d * (d - 1) / 2,
            }))
        }
    }
}

/// A random 1-cochain with `nnz` entries.
pub fn random_one_cochain(l: &LieAlgebra, nnz: usize, rng: &mut impl Rng) -> Cochain {
    let d = l.dim() as u32;
    let p = l.p();
    let mut c = Cochain::zero(l, 1);
    for _ in 0..nnz {
        let (a, t, v) = (rng.random_range(0..d), rng.random_range(0..d), rng.random_range(1..p));
        c.add_value(&[a], t, v).expect("degree one tuple");
    }
    c
}
