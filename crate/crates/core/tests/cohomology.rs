use cartan_core::cohomology::*;
use cartan_core::families::{build, build_w, Family, FamilySpec};
use cartan_core::LieAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alg(f: Family, n: usize, p: u32) -> LieAlgebra {
    build(FamilySpec::new(f, n, p)).unwrap()
}

fn h2(l: &LieAlgebra, opts: &CohomologyOptions) -> CohomologyReport {
    let r = h_dim(l, 2, opts).unwrap();
    assert!(r.complete);
    r
}

#[test]
fn small_h2_values_dense_and_graded() {
    for (l, want) in [
        (alg(Family::W, 1, 5), 1),
        (alg(Family::W, 1, 7), 1),
        (alg(Family::H, 2, 5), 3),
        (alg(Family::Sl, 2, 5), 0),
        (alg(Family::Sl, 2, 7), 0),
    ] {
        let g = h2(&l, &CohomologyOptions::default());
        let d = h2(&l, &CohomologyOptions::dense());
        assert_eq!(g.h_dim, want, "{}", l.name());
        assert_eq!(d.h_dim, want, "{}", l.name());
        let sum: usize = g.blocks.iter().map(|b| b.h2).sum();
        assert_eq!(sum, d.h_dim);
    }
}

#[test]
fn w2_has_two_classes() {
    assert_eq!(h2(&alg(Family::W, 2, 5), &CohomologyOptions::default()).h_dim, 2);
}

#[test]
fn refinements_agree_on_w1_and_h2() {
    for l in [alg(Family::W, 1, 5), alg(Family::H, 2, 5)] {
        let full = h2(&l, &CohomologyOptions::default()).h_dim;
        let no_toral = CohomologyOptions {
            toral_shortcut: false,
            ..Default::default()
        };
        let principal = CohomologyOptions {
            principal_only: true,
            ..Default::default()
        };
        assert_eq!(h2(&l, &no_toral).h_dim, full);
        assert_eq!(h2(&l, &principal).h_dim, full);
    }
}

#[test]
fn block_rank_nullity() {
    let l = alg(Family::W, 2, 5);
    let opts = CohomologyOptions {
        toral_shortcut: false,
        count_c3: true,
        ..Default::default()
    };
    let r = h2(&l, &opts);
    let d = l.dim() as u64;
    let mut c2_total = 0;
    for b in &r.blocks {
        assert_eq!(b.h2 + b.rank_d1 + b.rank_d2, b.c2);
        assert!(b.rank_d1 <= b.c1);
        assert!(b.rank_d2 as u64 <= b.c3.unwrap());
        c2_total += b.c2 as u64;
    }
    assert_eq!(c2_total, d * d * (d - 1) / 2);
}

#[test]
fn representatives_are_cocycles_and_not_coboundaries() {
    let l = alg(Family::H, 2, 5);
    let opts = CohomologyOptions {
        representatives: true,
        ..Default::default()
    };
    let r = h2(&l, &opts);
    let reps: Vec<Cochain> = r.blocks.iter().flat_map(|b| b.representatives.clone()).collect();
    assert_eq!(reps.len(), 3);
    for c in &reps {
        assert!(is_cocycle(&l, c).unwrap().is_cocycle());
        match coboundary_solve(&l, c).unwrap() {
            CoboundaryResult::NotCoboundary(cert) => assert!(verify_certificate(&l, c, &cert).unwrap()),
            CoboundaryResult::Coboundary(_) => panic!("representative is exact"),
        }
    }
    assert_eq!(class_span_dim(&l, &reps).unwrap(), 3);
}

#[test]
fn coboundaries_solve_back() {
    let l = alg(Family::W, 2, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let mut psi = Cochain::zero(&l, 1);
        for _ in 0..8 {
            psi.add_value(&[rng.random_range(0..50)], rng.random_range(0..50), rng.random_range(1..5))
                .unwrap();
        }
        let c = differential(&l, &psi).unwrap();
        match coboundary_solve(&l, &c).unwrap() {
            CoboundaryResult::Coboundary(phi) => assert_eq!(differential(&l, &phi).unwrap().entries(), c.entries()),
            CoboundaryResult::NotCoboundary(_) => panic!("d psi reported as non-exact"),
        }
        assert_eq!(class_span_dim(&l, &[c]).unwrap(), 0);
    }
}

#[test]
fn class_span_rejects_non_cocycles() {
    let l = build_w(1, 5).unwrap();
    let mut c = Cochain::zero(&l, 2);
    c.add_value(&[0, 1], 0, 1).unwrap();
    assert!(!is_cocycle(&l, &c).unwrap().is_cocycle());
    assert!(class_span_dim(&l, &[c]).is_err());
}

#[test]
fn budget_is_reported_not_exceeded() {
    let l = alg(Family::W, 2, 5);
    let opts = CohomologyOptions {
        block_cap: 10,
        ..CohomologyOptions::dense()
    };
    let r = h_dim(&l, 2, &opts).unwrap();
    assert!(!r.complete);
    assert_eq!(r.incomplete_blocks().count(), 1);
}

#[test]
fn only_degree_two_is_supported() {
    let l = build_w(1, 5).unwrap();
    assert!(h_dim(&l, 3, &CohomologyOptions::default()).is_err());
}
