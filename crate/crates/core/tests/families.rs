use cartan_core::families::{build, build_w, Family, FamilySpec, WittIndex};
use cartan_core::linalg::DenseMatrix;
use cartan_core::{Field, LieAlgebra, MultiIndex};

fn grid() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for p in [5, 7] {
        for n in 1..=3 {
            out.push(FamilySpec::new(Family::W, n, p));
        }
        out.push(FamilySpec::new(Family::S, 3, p));
        out.push(FamilySpec::new(Family::H, 2, p));
        out.push(FamilySpec::new(Family::H, 4, p));
        out.push(FamilySpec::new(Family::K, 3, p));
    }
    out.push(FamilySpec::new(Family::K, 5, 5));
    out.push(FamilySpec::new(Family::M, 2, 5));
    out
}

// independent closed forms
fn formula(s: &FamilySpec) -> usize {
    let (n, p) = (s.n as u32, s.p as usize);
    let pn = p.pow(n);
    match s.family {
        Family::W => n as usize * pn,
        Family::S => (n as usize - 1) * (pn - 1),
        Family::H => pn - 2,
        Family::K if ((n as usize - 1) / 2 + 2).is_multiple_of(p) => pn - 1,
        Family::K => pn,
        Family::M => 125,
        _ => unreachable!(),
    }
}

#[test]
fn dimensions_over_the_grid() {
    for s in grid() {
        let l = build(s).unwrap();
        assert_eq!(l.dim(), formula(&s), "{s}");
        assert_eq!(s.expected_dim(), formula(&s));
    }
}

#[test]
fn jacobi_exhaustive_on_small_algebras() {
    for s in grid() {
        let l = build(s).unwrap();
        if l.dim() <= 130 {
            assert_eq!(l.jacobi_witness_exhaustive(), None, "{s}");
        }
    }
}

#[test]
fn witt_brackets_by_hand() {
    let l = build_w(1, 5).unwrap();
    let e = |s: &str| l.basis_element(l.index_of(s).unwrap());
    assert_eq!(l.bracket(&e("x1D1"), &e("x1^2D1")).unwrap(), e("x1^2D1"));
    assert_eq!(l.bracket(&e("D1"), &e("x1D1")).unwrap(), e("D1"));
    assert!(l.bracket(&e("D1"), &e("D1")).unwrap().is_zero());
}

#[test]
fn ad_x_d_has_the_expected_eigenvalues() {
    let l = build_w(1, 5).unwrap();
    let x = l.basis_element(l.index_of("x1D1").unwrap());
    let ad = l.ad_matrix(&x).unwrap();
    let f = Field::new(5).unwrap();
    // prod (t - lambda) over lambda = -1, 0, 1, 2, 3 is t^5 - t mod 5
    let cp = ad.charpoly();
    assert_eq!(cp, vec![0, f.neg(1), 0, 0, 0, 1]);
    for lambda in [4u32, 0, 1, 2, 3] {
        let shifted = ad.add(&DenseMatrix::identity(f, 5).scale(f.neg(lambda)));
        assert_eq!(shifted.nullspace().len(), 1);
    }
}

#[test]
fn killing_forms() {
    for p in [5, 7] {
        let (_, r) = build_w(1, p).unwrap().killing_form();
        assert!(r < 5, "p = {p}: rank {r}");
    }
    let sl2 = build(FamilySpec::new(Family::Sl, 2, 5)).unwrap();
    assert_eq!(sl2.killing_form().1, 3);
    let ab = LieAlgebra::abelian(Field::new(5).unwrap(), 1);
    assert_eq!(ab.killing_form().1, 0);
}

#[test]
fn w1_is_perfect_and_centerless() {
    let l = build_w(1, 5).unwrap();
    assert_eq!(l.derived_subalgebra().dim(), 5);
    assert_eq!(l.center().dim(), 0);
    for i in 0..5 {
        assert_eq!(l.ideal_closure(&l.basis_element(i)).unwrap().dim(), 5);
    }
}

#[test]
fn melikian_is_centerless() {
    let m = build(FamilySpec::new(Family::M, 2, 5)).unwrap();
    assert_eq!(m.center().dim(), 0);
    assert_eq!(m.derived_subalgebra().dim(), 125);
}

#[test]
fn witt_grading_is_degree_minus_one() {
    for (n, p) in [(1, 5), (2, 5), (2, 7)] {
        let l = build_w(n, p).unwrap();
        let idx = WittIndex::new(n, p);
        let g = l.grading().unwrap();
        for i in 0..l.dim() {
            let (rank, _) = idx.decode(i as u32);
            let a = MultiIndex::from_rank(rank, n, p);
            assert_eq!(g.weight(i), a.degree() as i64 - 1);
        }
    }
}

#[test]
fn construction_rejects_bad_parameters() {
    assert!(build(FamilySpec::new(Family::W, 1, 4)).is_err());
    assert!(build(FamilySpec::new(Family::W, 1, 3)).is_err());
    assert!(build(FamilySpec::new(Family::H, 3, 5)).is_err());
    assert!(build(FamilySpec::new(Family::K, 4, 5)).is_err());
    assert!(build(FamilySpec::new(Family::M, 2, 7)).is_err());
    assert!(build(FamilySpec::new(Family::S, 2, 5)).is_err());
}
