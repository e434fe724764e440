//! Exact sparse Laurent polynomials over the rationals, symbolic matrix
//! gadgets built from them, and exact checks of polynomial identities.

mod error;
mod parse;
mod poly;
pub mod symbolic;
pub mod witness;

pub use error::{PolyError, Result};
pub use num_rational::BigRational;
pub use parse::poly_parse;
pub use poly::LaurentPoly;
pub use symbolic::{build_cancel, build_haagerup, build_ort, SymbolicMatrix};
pub use witness::{witness_check_l62, witness_check_p63, WitnessReport};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_term_count() {
        let p = poly_parse("(b-q*w)*(1+w+w^2)").unwrap();
        assert_eq!(p.term_count(), 6);
    }

    #[test]
    fn cancellation() {
        let p = poly_parse("3*x^2*y^-1 - 7").unwrap();
        assert!((&p - &p).is_zero());
        let a = poly_parse("q*w*p^-1").unwrap() * poly_parse("p").unwrap();
        assert_eq!(a, poly_parse("q*w").unwrap());
        assert_eq!(a.vars(), ["q", "w"]);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-1", "3/2*b^2*q^-1 - x + 7", "-b*u*w + q*u*w^4", "(1+x)^3/5"] {
            let p = poly_parse(s).unwrap();
            assert_eq!(poly_parse(&p.to_string()).unwrap(), p, "{s} -> {p}");
        }
        assert_eq!(poly_parse("x - x").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match poly_parse("1 + * x") {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(poly_parse("x / (1 + y)"), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(poly_parse("(1+x)^-1"), Err(PolyError::Parse { .. })));
        assert!(matches!(poly_parse("x $"), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(poly_parse("(x"), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(poly_parse("x^99999999999"), Err(PolyError::ExponentOverflow)));
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let big = poly_parse("x^2147483647").unwrap();
        assert_eq!(big.checked_mul(&poly_parse("x").unwrap()), Err(PolyError::ExponentOverflow));
    }

    #[test]
    fn substitution() {
        let p = poly_parse("x^2*y + x^-1").unwrap();
        let s = p.substitute("x", &poly_parse("2*z").unwrap()).unwrap();
        assert_eq!(s, poly_parse("4*z^2*y + 1/2*z^-1").unwrap());
        assert!(matches!(
            p.substitute("x", &poly_parse("1+z").unwrap()),
            Err(PolyError::NonMonomialSubstitution { .. })
        ));
        assert_eq!(p.substitute("nope", &LaurentPoly::one()).unwrap(), p);
    }
}
