use hadlab_core::families::{d6, sample_x6, x6};
use hadlab_core::{CHMatrix, Complex64, Tolerances, UnimodEntry};
use hadlab_poly::{build_ort, poly_parse, BigRational, LaurentPoly, SymbolicMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const VARS: [&str; 3] = ["x", "y", "z"];

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    let term = (-5i64..=5, 1i64..=3, prop::collection::vec(-2i32..=3, 3));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (n, d, exps)| {
            let c = BigRational::new(BigInt::from(n), BigInt::from(d));
            let factors: Vec<(&str, i32)> = VARS.iter().copied().zip(exps).collect();
            &acc + &LaurentPoly::monomial(c, &factors)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn print_then_parse(a in arb_poly()) {
        prop_assert_eq!(poly_parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), t in 0.0..1.0f64) {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * t);
        let pt = [("x", z), ("y", z * z), ("z", z.conj())];
        let lhs = (&a * &b).evaluate(&pt).unwrap();
        let rhs = a.evaluate(&pt).unwrap() * b.evaluate(&pt).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }
}

fn symbolic_grid(rows: usize) -> (SymbolicMatrix, Vec<String>) {
    let mut names = Vec::new();
    let mut grid = Vec::new();
    for i in 0..rows {
        let mut row = Vec::new();
        for j in 0..6 {
            let name = format!("h{i}{j}");
            row.push(LaurentPoly::var(&name));
            names.push(name);
        }
        grid.push(row);
    }
    (SymbolicMatrix::new(grid).unwrap(), names)
}

fn check_ort_against(m: &CHMatrix) {
    let (s, names) = symbolic_grid(m.rows());
    let values: Vec<Complex64> = m.entries().iter().map(|u| u.value()).collect();
    let pt: Vec<(&str, Complex64)> = names.iter().map(String::as_str).zip(values).collect();
    for x in 0..m.rows() {
        for y in 0..m.rows() {
            let sym = build_ort(&s, x, y).unwrap().evaluate(&pt).unwrap();
            let row_product: Complex64 = m.row(y).iter().map(|u| u.value()).product();
            let num = m.inner_product_rows(x, y).unwrap() * row_product;
            assert!((sym - num).norm() <= 1e-9, "({x}, {y}): {sym} vs {num}");
        }
    }
}

#[test]
fn ort_agrees_with_numeric_inner_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let entries = (0..36).map(|_| UnimodEntry::random(&mut rng)).collect();
    check_ort_against(&CHMatrix::new(6, 6, entries).unwrap());
    check_ort_against(&d6(UnimodEntry::random(&mut rng)));
    let tol = Tolerances::default();
    check_ort_against(&x6(&sample_x6(&mut rng).unwrap(), &tol).unwrap());
}
