//! Classical controls: sl(n), psl(n) = sl(n)/(I) when p | n, and gl(n).

use crate::algebra::{Grading, LieAlgebra, TableBuilder};
use crate::error::Result;
use crate::families::{Family, FamilySpec};
use crate::fp::Field;
use crate::linalg::SparseVec;

/// Basis matrices as sparse entries `(row, col, value)`.
struct MatrixBasis {
    n: usize,
    labels: Vec<String>,
    mats: Vec<Vec<(usize, usize, u32)>>,
    weights: Vec<i64>,
    /// basis index of E_ij (i != j)
    off: Vec<Vec<usize>>,
    /// basis index of H_k, or of E_kk for gl
    diag: Vec<Option<usize>>,
}

fn commutator(field: Field, n: usize, a: &[(usize, usize, u32)], b: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]; n];
    for &(i, k, x) in a {
        for &(k2, j, y) in b {
            if k == k2 {
                out[i][j] = field.add(out[i][j], field.mul(x, y));
            }
        }
    }
    for &(i, k, x) in b {
        for &(k2, j, y) in a {
            if k == k2 {
                out[i][j] = field.sub(out[i][j], field.mul(x, y));
            }
        }
    }
    out
}

fn matrix_basis(family: Family, n: usize, field: Field) -> MatrixBasis {
    let mut mb = MatrixBasis {
        n,
        labels: Vec::new(),
        mats: Vec::new(),
        weights: Vec::new(),
        off: vec![vec![usize::MAX; n]; n],
        diag: vec![None; n],
    };
    let push = |mb: &mut MatrixBasis, label: String, m: Vec<(usize, usize, u32)>, w: i64| {
        mb.labels.push(label);
        mb.mats.push(m);
        mb.weights.push(w);
        mb.labels.len() - 1
    };
    for i in 0..n {
        for j in i + 1..n {
            let k = push(&mut mb, format!("E{}{}", i + 1, j + 1), vec![(i, j, 1)], (j - i) as i64);
            mb.off[i][j] = k;
        }
    }
    let diag_count = match family {
        Family::Psl => n - 2,
        Family::Sl => n - 1,
        _ => n,
    };
    for k in 0..diag_count {
        let idx = if family == Family::Sl || family == Family::Psl {
            push(
                &mut mb,
                format!("H{}", k + 1),
                vec![(k, k, 1), (k + 1, k + 1, field.neg(1))],
                0,
            )
        } else {
            push(&mut mb, format!("E{}{}", k + 1, k + 1), vec![(k, k, 1)], 0)
        };
        mb.diag[k] = Some(idx);
    }
    for i in 0..n {
        for j in 0..i {
            let k = push(&mut mb, format!("E{}{}", i + 1, j + 1), vec![(i, j, 1)], j as i64 - i as i64);
            mb.off[i][j] = k;
        }
    }
    mb
}

/// Coordinates of a matrix in the basis. For sl/psl the diagonal `d` is
/// written as `sum c_k H_k` with `c_k = d_1 + ... + d_k`; for psl the last
/// `H_{n-1}` is rewritten through `I = sum_k k H_k = 0`, i.e.
/// `H_{n-1} = sum_{k<n-1} k H_k` (1-based `k`).
fn coords(family: Family, field: Field, mb: &MatrixBasis, m: &[Vec<u32>]) -> SparseVec {
    let n = mb.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && m[i][j] != 0 {
                out.push((mb.off[i][j] as u32, m[i][j]));
            }
        }
    }
    match family {
        Family::Sl | Family::Psl => {
            let mut c = vec![0u32; n];
            let mut run = 0;
            for k in 0..n - 1 {
                run = field.add(run, m[k][k]);
                c[k] = run;
            }
            if family == Family::Psl {
                let last = c[n - 2];
                for k in 0..n - 2 {
                    c[k] = field.add(c[k], field.mul((k + 1) as u32 % field.p(), last));
                }
                c[n - 2] = 0;
            }
            for (k, &v) in c.iter().enumerate() {
                if v != 0 {
                    out.push((mb.diag[k].unwrap() as u32, v));
                }
            }
        }
        _ => {
            for k in 0..n {
                if m[k][k] != 0 {
                    out.push((mb.diag[k].unwrap() as u32, m[k][k]));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn build_matrix_algebra(family: Family, n: usize, p: u32) -> Result<LieAlgebra> {
    let field = Field::new(p)?;
    let mb = matrix_basis(family, n, field);
    let dim = mb.mats.len();
    let mut table = TableBuilder::new(field, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let c = commutator(field, n, &mb.mats[i], &mb.mats[j]);
            table.set(i, j, coords(family, field, &mb, &c))?;
        }
    }
    let name = format!("{}({n})", family_name(family));
    let mut alg = LieAlgebra::new(name, field, mb.labels.clone(), table)?;
    alg.set_grading(Some(Grading::new(mb.weights.clone())));
    // X -> X^p: nilpotent E_ij vanish, diagonal basis matrices have entries
    // in {0, 1, -1} and are fixed
    let pmap = (0..dim)
        .map(|k| {
            if mb.diag.contains(&Some(k)) {
                vec![(k as u32, 1)]
            } else {
                vec![]
            }
        })
        .collect();
    alg.set_p_map(Some(pmap));
    Ok(alg)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Sl => "sl",
        Family::Psl => "psl",
        _ => "gl",
    }
}

/// sl(n) or psl(n) (the latter only when p | n).
pub fn build_classical(family: Family, n: usize, p: u32) -> Result<LieAlgebra> {
    let spec = FamilySpec::new(family, n, p);
    spec.validate()?;
    if family != Family::Sl && family != Family::Psl {
        return Err(crate::error::Error::InvalidParameters(format!(
            "{family} is not a classical family"
        )));
    }
    let mut alg = build_matrix_algebra(family, n, p)?;
    alg.set_family(Some(spec));
    Ok(alg)
}

/// gl(n): not simple, used as a negative control.
pub fn build_gl(n: usize, p: u32) -> Result<LieAlgebra> {
    if n < 1 {
        return Err(crate::error::Error::InvalidParameters("gl(n) needs n >= 1".into()));
    }
    build_matrix_algebra(Family::W, n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_classical(Family::Sl, 2, 5).unwrap().dim(), 3);
        assert_eq!(build_classical(Family::Sl, 5, 5).unwrap().dim(), 24);
        assert_eq!(build_classical(Family::Psl, 5, 5).unwrap().dim(), 23);
        assert!(build_classical(Family::Psl, 4, 5).is_err());
        assert_eq!(build_gl(2, 5).unwrap().dim(), 4);
    }

    #[test]
    fn sl2_brackets() {
        let l = build_classical(Family::Sl, 2, 5).unwrap();
        let (e, h, f) = (0, 1, 2);
        let b = |i, j| l.bracket(&l.basis_element(i), &l.basis_element(j)).unwrap();
        assert_eq!(b(e, f), l.basis_element(h));
        assert_eq!(b(h, e), l.scale(&l.basis_element(e), 2).unwrap());
        assert_eq!(b(h, f), l.scale(&l.basis_element(f), 3).unwrap());
    }

    #[test]
    fn sl5_identity_is_central() {
        let l = build_classical(Family::Sl, 5, 5).unwrap();
        assert_eq!(l.center().dim(), 1);
        let z = build_classical(Family::Psl, 5, 5).unwrap();
        assert_eq!(z.center().dim(), 0);
        assert!(z.jacobi_witness_exhaustive().is_none());
    }
}
