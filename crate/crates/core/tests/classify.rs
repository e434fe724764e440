use hadlab_core::cancel::{cancelling_summary, is_cancelling_pair, karlsson_blocks, locate_dita, verify_block_pairing};
use hadlab_core::families::{d6, f6t, h_a, r2, sample_x6, x6, CubeRoot, FourierTParams};
use hadlab_core::haagerup::{fingerprints_differ, haagerup_fingerprint, haagerup_scan};
use hadlab_core::patterns::{classify, classify_all_pivots, Verdict};
use hadlab_core::recover::{recover, recover_x6, Recovery};
use hadlab_core::{apply_equivalence, are_equivalent, CHMatrix, EquivalenceMove, Tolerances, UnimodEntry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn scramble(m: &CHMatrix, rng: &mut ChaCha8Rng) -> CHMatrix {
    apply_equivalence(m, &EquivalenceMove::random(rng, 6, 6)).unwrap()
}

fn random_member(rng: &mut ChaCha8Rng) -> CHMatrix {
    match rng.random_range(0..3) {
        0 => f6t(&FourierTParams::random(rng)),
        1 => x6(&sample_x6(rng).unwrap(), &tol()).unwrap(),
        _ => d6(UnimodEntry::random(rng)),
    }
}

#[test]
fn verdict_is_invariant_under_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..100 {
        let m = random_member(&mut rng);
        let s = scramble(&m, &mut rng);
        assert_eq!(classify(&m, &tol()).unwrap().verdict, classify(&s, &tol()).unwrap().verdict);
    }
}

#[test]
fn scrambled_families_classify() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for _ in 0..20 {
        let f = scramble(&f6t(&FourierTParams::random(&mut rng)), &mut rng);
        assert_eq!(classify(&f, &tol()).unwrap().verdict, Verdict::TransposedFourier);
        let x = scramble(&x6(&sample_x6(&mut rng).unwrap(), &tol()).unwrap(), &mut rng);
        let r = classify(&x, &tol()).unwrap();
        assert_eq!(r.verdict, Verdict::TwoCirculant);
        assert!(!r.regular);
        let h = h_a(UnimodEntry::random(&mut rng), CubeRoot::Primary);
        assert_eq!(classify(&h, &tol()).unwrap().verdict, Verdict::None);
    }
}

#[test]
fn all_pivots_agree_on_scrambled_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..5 {
        let s = scramble(&random_member(&mut rng), &mut rng);
        assert!(classify_all_pivots(&s, &tol()).unwrap().disagreements.is_empty());
    }
}

#[test]
fn cancelling_structure_of_dita_and_r2() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for _ in 0..10 {
        let m = d6(UnimodEntry::random(&mut rng));
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(is_cancelling_pair(&m, i, j, &tol()).unwrap());
            }
        }
        let s = cancelling_summary(&m, &tol()).unwrap();
        assert!(s.regular && s.triangle.is_some());
        let q = UnimodEntry::random(&mut rng);
        let r = r2(q);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(is_cancelling_pair(&r, i, j, &tol()).unwrap());
        }
    }
}

#[test]
fn triangles_locate_a_dita_parameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    for _ in 0..3 {
        let s = scramble(&d6(UnimodEntry::random(&mut rng)), &mut rng);
        assert!(cancelling_summary(&s, &tol()).unwrap().triangle.is_some());
        let loc = locate_dita(&s, &tol()).unwrap().expect("dita parameter");
        assert!(are_equivalent(&s, &d6(loc.c), &tol()).unwrap().is_some());
    }
}

#[test]
fn block_pairings_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(205);
    for _ in 0..10 {
        let m = scramble(&random_member(&mut rng), &mut rng);
        let p = karlsson_blocks(&m, &tol()).unwrap().expect("pairing");
        assert!(verify_block_pairing(&m, &p, 1e-9));
    }
}

#[test]
fn x6_recovery_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(206);
    for _ in 0..50 {
        let m = x6(&sample_x6(&mut rng).unwrap(), &tol()).unwrap();
        let (a, b, c, d) = (m.get(1, 2), m.get(1, 3), m.get(2, 1), m.get(2, 3));
        let out = recover_x6(a, b, c, d, &tol()).unwrap();
        assert_eq!(out.len(), 3);
        for p in out {
            assert!(p.implicit_residual() <= 1e-9);
            assert!(x6(&p, &tol()).unwrap().approx_eq(&m, 1e-9));
        }
    }
}

#[test]
fn recovery_certificates_hold_on_scrambled_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(207);
    for _ in 0..10 {
        let m = random_member(&mut rng);
        let s = scramble(&m, &mut rng);
        let r = recover(&s, &tol()).unwrap();
        assert!(r.certificate_residual(&s).unwrap() <= 1e-8, "{r:?}");
        if let Recovery::F6t { .. } = r {
            assert!(classify(&r.target(), &tol()).unwrap().verdict.is_transposed_fourier());
        }
    }
}

#[test]
fn intersection_point_recovers_as_both() {
    let w = CubeRoot::Primary.value();
    let m = f6t(&FourierTParams::new(w, w));
    let mut rng = ChaCha8Rng::seed_from_u64(208);
    let s = scramble(&m, &mut rng);
    let r = recover(&s, &tol()).unwrap();
    assert_eq!(classify(&r.target(), &tol()).unwrap().verdict, Verdict::Both);
}

#[test]
fn equivalence_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(209);
    for _ in 0..5 {
        let m = random_member(&mut rng);
        let s = scramble(&m, &mut rng);
        let w = are_equivalent(&m, &s, &tol()).unwrap().expect("equivalent");
        assert!(apply_equivalence(&m, &w).unwrap().approx_eq(&s, 1e-8));
    }
    let c = UnimodEntry::random(&mut rng);
    let t = d6(c).transpose().unwrap();
    assert!(t.approx_eq(&d6(c.recip()), 1e-15));
    assert!(are_equivalent(&t, &d6(c.recip()), &tol()).unwrap().is_some());
}

#[test]
fn inequivalent_pairs_have_different_fingerprints() {
    let mut rng = ChaCha8Rng::seed_from_u64(210);
    for _ in 0..5 {
        let f = f6t(&FourierTParams::random(&mut rng));
        let d = d6(UnimodEntry::random(&mut rng));
        assert!(fingerprints_differ(&f, &d));
        assert!(are_equivalent(&f, &d, &tol()).unwrap().is_none());
    }
}

#[test]
fn scan_and_fingerprint_survive_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    for _ in 0..10 {
        let m = random_member(&mut rng);
        let s = scramble(&m, &mut rng);
        let (a, b) = (haagerup_scan(&m), haagerup_scan(&s));
        assert!((a.max_abs_bracket - b.max_abs_bracket).abs() <= 1e-8);
        assert!(!fingerprints_differ(&m, &s));
        assert!(!haagerup_fingerprint(&m).is_empty());
    }
}

#[test]
fn random_unimodular_matrix_fails_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(212);
    let entries = (0..36).map(|_| UnimodEntry::random(&mut rng)).collect();
    let m = CHMatrix::new(6, 6, entries).unwrap();
    assert!(haagerup_scan(&m).max_abs_bracket > 0.1);
}
