use hadlab_core::families::{
    d6, f6t, h13, h_a, r1, r2, sample_x6, solve_implicit, x6, CubeRoot, FourierTParams, Relation,
    X6Sampler, X6Var,
};
use hadlab_core::haagerup::haagerup_scan;
use hadlab_core::{are_equivalent, Complex64, Tolerances, UnimodEntry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn constructors_are_hadamard_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let p = FourierTParams::random(&mut rng);
        let c = UnimodEntry::random(&mut rng);
        let mut ms = vec![f6t(&p), d6(c), h_a(c, CubeRoot::Conjugate)];
        ms.push(x6(&sample_x6(&mut rng).unwrap(), &tol()).unwrap());
        for m in &ms {
            let (ok, r) = m.is_hadamard(&tol()).unwrap();
            assert!(ok && r <= 1e-9, "residual {r}");
        }
        for m in [r1(c), r2(c)] {
            assert!(m.max_row_residual() <= 1e-9);
        }
    }
}

#[test]
fn family_members_have_vanishing_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..10 {
        let p = sample_x6(&mut rng).unwrap();
        assert!(haagerup_scan(&x6(&p, &tol()).unwrap()).max_abs_bracket <= 1e-8);
        let c = UnimodEntry::random(&mut rng);
        assert!(haagerup_scan(&d6(c)).max_abs_bracket <= 1e-8);
    }
}

#[test]
fn cube_root_choice_gives_the_same_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..3 {
        let p = FourierTParams::random(&mut rng);
        let q = FourierTParams {
            a: p.b,
            b: p.a,
            w: p.w.other(),
        };
        assert!(are_equivalent(&f6t(&p), &f6t(&q), &tol()).unwrap().is_some());
    }
}

#[test]
fn entry_product_relations_on_x6_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..20 {
        let m = x6(&sample_x6(&mut rng).unwrap(), &tol()).unwrap();
        let g = |i, j| m.get(i, j).value();
        let (a, b, c, d, e, f) = (g(1, 2), g(1, 3), g(2, 1), g(2, 3), g(3, 1), g(3, 2));
        assert!((a * c - b * e).norm() <= 1e-10);
        assert!((b * e - d * f).norm() <= 1e-10);
        let args = [a, b, c, d];
        assert!(Relation::H33.eval(&args).unwrap().norm() <= 1e-9);
        let h = h13(m.get(1, 2), m.get(1, 3), m.get(2, 1), m.get(2, 3), &tol()).unwrap();
        assert!(h.approx_eq(&m, 1e-12));
    }
}

#[test]
fn specialised_relations_factor_through_h33() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..10 {
        let a = UnimodEntry::random(&mut rng).value();
        let b = UnimodEntry::random(&mut rng).value();
        let d = UnimodEntry::random(&mut rng).value();
        let h = Relation::H33.eval(&[a, a, d * d / a, d]).unwrap();
        let sf = Relation::Subfam.eval(&[a, d]).unwrap();
        assert!((h - d / a * sf).norm() < 1e-12);
        let h = Relation::H33.eval(&[a, b, b * b / a, b * b / a]).unwrap();
        let s2 = Relation::Sub2.eval(&[a, b]).unwrap();
        assert!((h + b * b / (a * a) * s2).norm() < 1e-12);
        let c5 = Relation::Case5.eval(&[a, b]).unwrap();
        assert!((c5 + Relation::Sub2.eval(&[b, a]).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn sampler_crossings_all_satisfy_implicit_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let s = X6Sampler::default();
    let mut total = 0;
    for _ in 0..20 {
        let beta = UnimodEntry::random(&mut rng);
        let gamma = UnimodEntry::random(&mut rng);
        for p in s.crossings(beta, gamma) {
            total += 1;
            assert!(p.implicit_residual() <= 1e-9);
            let roots = solve_implicit(&p, X6Var::Epsilon);
            assert!(roots.iter().any(|e| e.is_close(p.epsilon, 1e-6)));
        }
    }
    assert!(total > 0);
}

#[test]
fn implicit_relation_by_name() {
    let one = Complex64::new(1.0, 0.0);
    let v = hadlab_core::families::eval_relation("implicit", &[one; 4]).unwrap();
    assert_eq!(v, Complex64::new(6.0, 0.0));
}
