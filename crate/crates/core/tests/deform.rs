use cartan_core::cohomology::{class_span_dim, differential, is_cocycle, Cochain};
use cartan_core::deform::*;
use cartan_core::families::{build, build_h, build_s, build_w, d_ij, Family, FamilySpec, WittIndex};
use cartan_core::sparse::SpanSolver;
use cartan_core::{LieAlgebra, MultiIndex, TruncatedPolynomial};

fn mi(v: &[u32], p: u32) -> MultiIndex {
    MultiIndex::new(v.to_vec(), p).unwrap()
}

fn h_idx(a: &MultiIndex) -> u32 {
    a.rank() - 1
}

#[test]
fn listed_counts() {
    for (f, n, p, want) in [
        (Family::W, 1, 5, 1),
        (Family::W, 2, 5, 2),
        (Family::H, 2, 5, 3),
        (Family::K, 3, 5, 3),
        (Family::M, 2, 5, 5),
        (Family::S, 3, 5, 4),
        (Family::Sl, 2, 5, 0),
    ] {
        let spec = FamilySpec::new(f, n, p);
        assert_eq!(listed_count(&spec), want);
        assert_eq!(theorem_cocycles(&build(spec).unwrap()).unwrap().len(), want);
    }
    assert_eq!(listed_count(&FamilySpec::new(Family::H, 4, 5)), 11);
}

#[test]
fn wrong_family_is_rejected() {
    let w = build_w(1, 5).unwrap();
    assert!(theta_cocycle(&w).is_err());
    assert!(phi_cocycle(&w).is_err());
    assert!(k_theorem_cocycles(&w).is_err());
    assert!(m_theorem_cocycles(&w).is_err());
}

#[test]
fn theta_takes_the_stated_value() {
    let s = build_s(3, 5).unwrap();
    let theta = theta_cocycle(&s).unwrap();
    assert!(is_cocycle(&s, &theta).unwrap().is_cocycle());
    let idx = WittIndex::new(3, 5);
    let mut solver = SpanSolver::new(s.field(), idx.dim(), s.embedding().unwrap().iter());
    let find = |solver: &mut SpanSolver, j| {
        let c = solver.express(&[(idx.index(0, j), 1)]).unwrap();
        assert_eq!(c.len(), 1);
        c[0]
    };
    let (u1, a1) = find(&mut solver, 0);
    let (u2, a2) = find(&mut solver, 1);
    let f = s.field();
    // theta(D1, D2) = d_12(x^(4,4,4)), pushed through the embedding
    let top = TruncatedPolynomial::monomial(&mi(&[4, 4, 4], 5), 1, f);
    let want = d_ij(&top, 0, 1).unwrap().to_w_coords(&idx);
    let got = theta.basis_value(&[u1, u2]);
    let scale = f.inv(f.mul(a1, a2));
    let mut acc = vec![0u32; idx.dim()];
    for (t, c) in got {
        for &(k, e) in &s.embedding().unwrap()[t as usize] {
            acc[k as usize] = f.add(acc[k as usize], f.mul(f.mul(c, e), scale));
        }
    }
    let mut dense = vec![0u32; idx.dim()];
    for (k, c) in want {
        dense[k as usize] = c;
    }
    assert_eq!(acc, dense);
    // every other pair of basis vectors is sent to zero
    assert_eq!(theta.iter().filter(|(t, _, _)| !(t.contains(&u1) || t.contains(&u2))).count(), 0);
}

#[test]
fn pi_ij_vanishes_without_derivatives() {
    let h = build_h(4, 5).unwrap();
    let pi = pi_ij_cocycle(&h, 1, 2).unwrap();
    // x3 and x4 are killed by D1 and D2
    let a = h_idx(&mi(&[0, 0, 1, 0], 5));
    let b = h_idx(&mi(&[0, 0, 0, 2], 5));
    assert!(pi.basis_value(&[a, b]).is_empty());
    assert!(pi_ij_cocycle(&h, 1, 3).is_err());
    assert!(pi_ij_cocycle(&h, 2, 1).is_err());
    assert!(pi_ij_cocycle(&build_h(2, 5).unwrap(), 1, 2).is_err());
}

#[test]
fn pi_i_second_clause_example() {
    let h = build_h(4, 5).unwrap();
    let pi = pi_i_cocycle(&h, 2).unwrap();
    assert!(pi.overlaps.is_empty());
    let u = h_idx(&mi(&[1, 0, 0, 0], 5));
    let v = h_idx(&mi(&[4, 0, 4, 0], 5));
    let t = h_idx(&mi(&[4, 4, 3, 4], 5));
    assert_eq!(pi.cochain.basis_value(&[u, v]), vec![(t, 4)]);
    assert!(pi_i_cocycle(&h, 3).is_err());
}

#[test]
fn h4_listed_classes_are_cocycles() {
    let h = build_h(4, 5).unwrap();
    let cs = h_theorem_cocycles(&h).unwrap();
    assert_eq!(cs.len(), 11);
    for c in &cs {
        assert!(is_cocycle(&h, &c.cochain).unwrap().is_cocycle(), "{}", c.name);
    }
}

/// Brute-force Phi: every delta <= a with |delta| = 3, integer binomials.
fn phi_oracle(h: &LieAlgebra, corrected: bool) -> Cochain {
    let p = h.p();
    let n = 2;
    let f = h.field();
    let binom = |a: u32, b: u32| -> i64 {
        if b > a {
            return 0;
        }
        (0..b).fold(1i64, |acc, k| acc * (a - k) as i64 / (k + 1) as i64)
    };
    let exps: Vec<[u32; 2]> = (1..p * p - 1).map(|r| [r / p, r % p]).collect();
    Cochain::from_pairs(h, |u, v| {
        let (a, b) = (exps[u], exps[v]);
        let bh = [b[1], b[0]];
        let mut out = std::collections::BTreeMap::new();
        for d0 in 0..=3u32 {
            let d = [d0, 3 - d0];
            let dh = [d[1], d[0]];
            if (0..n).any(|i| d[i] > a[i] || d[i] > bh[i]) {
                continue;
            }
            let coef = binom(a[0], d[0]) * binom(a[1], d[1]) * binom(b[0], dh[0]) * binom(b[1], dh[1])
                * if d[1] % 2 == 0 { 1 } else { -1 }
                * (1..=d[0]).product::<u32>() as i64
                * (1..=d[1]).product::<u32>() as i64;
            let second = if corrected { b } else { bh };
            let e: Vec<i64> = (0..n).map(|i| a[i] as i64 + second[i] as i64 - d[i] as i64 - dh[i] as i64).collect();
            if e.iter().any(|&x| x < 0 || x >= p as i64) {
                continue;
            }
            let r = (e[0] * p as i64 + e[1]) as u32;
            if r == 0 || r == p * p - 1 {
                continue;
            }
            *out.entry(r - 1).or_insert(0i64) += coef;
        }
        out.into_iter()
            .map(|(t, c)| (t, f.from_i64(c)))
            .filter(|&(_, c)| c != 0)
            .collect()
    })
}

#[test]
fn phi_matches_the_brute_force_oracle() {
    for p in [5, 7] {
        let h = build_h(2, p).unwrap();
        for (variant, corrected) in [(PhiExponent::AsPrinted, false), (PhiExponent::Corrected, true)] {
            let got = phi_cocycle_with(&h, variant).unwrap();
            assert_eq!(got.entries(), phi_oracle(&h, corrected).entries(), "p = {p} {variant:?}");
        }
    }
}

#[test]
fn phi_example_pair_vanishes_as_printed() {
    // a = (3,0), b = (0,3): the only delta is (3,0) and the printed exponent is (3,-3)
    let h = build_h(2, 5).unwrap();
    let phi = phi_cocycle_with(&h, PhiExponent::AsPrinted).unwrap();
    let a = h_idx(&mi(&[3, 0], 5));
    let b = h_idx(&mi(&[0, 3], 5));
    assert!(phi.basis_value(&[a, b]).is_empty());
}

#[test]
fn phi_reading_decides_closedness() {
    let h = build_h(2, 5).unwrap();
    let printed = phi_cocycle_with(&h, PhiExponent::AsPrinted).unwrap();
    let corrected = phi_cocycle(&h).unwrap();
    assert!(!is_cocycle(&h, &printed).unwrap().is_cocycle());
    assert!(is_cocycle(&h, &corrected).unwrap().is_cocycle());
    assert_eq!(class_span_dim(&h, &[corrected]).unwrap(), 1);
}

#[test]
fn squares_of_d1_and_d2_are_inequivalent() {
    let w = build_w(2, 5).unwrap();
    let cs = w_theorem_cocycles(&w).unwrap();
    assert!(deformation_equiv(&w, &cs[0].cochain, &cs[1].cochain).unwrap().is_none());
    let same = deformation_equiv(&w, &cs[0].cochain, &cs[0].cochain).unwrap().unwrap();
    assert!(differential(&w, &same.phi).unwrap().is_zero());
}

#[test]
fn theorem_reports_for_small_families() {
    for (f, n, p) in [(Family::W, 1, 5), (Family::W, 1, 7), (Family::H, 2, 5), (Family::Sl, 2, 5)] {
        let r = verify_theorem(FamilySpec::new(f, n, p), &Default::default()).unwrap();
        assert!(r.matched(), "{:?}", r.spec);
        assert!(r.classes.iter().all(|c| c.cocycle));
        assert_eq!(r.h2_class_blocks, r.listed);
    }
}
