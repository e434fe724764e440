//! Exact checks of two ideal-membership identities for the 4x4 submatrix
//!
//! ```text
//! 1   1   1   1
//! 1  -1   1  -1
//! 1   b   p   q
//! 1  -b   w  -qw/p
//! ```

use crate::error::Result;
use crate::parse::poly_parse;
use crate::poly::LaurentPoly;
use crate::symbolic::{build_haagerup, SymbolicMatrix};

/// Outcome of a witness identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub holds: bool,
    /// `lhs - rhs`, expanded; zero exactly when the identity holds.
    pub residual: LaurentPoly,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl WitnessReport {
    fn new(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        let residual = &lhs - &rhs;
        Self {
            holds: residual.is_zero(),
            residual,
            lhs,
            rhs,
        }
    }
}

pub fn witness_matrix() -> SymbolicMatrix {
    SymbolicMatrix::parse(&[
        &["1", "1", "1", "1"],
        &["1", "-1", "1", "-1"],
        &["1", "b", "p", "q"],
        &["1", "-b", "w", "-q*w/p"],
    ])
    .expect("fixed entries are monomials")
}

const Q1: &str = "-b*u*w + q*u*w^4";
const Q2: &str = "-p*q*u*w - b^2*q*u^2*w";
const Q3: &str = "-2*q*u*w + p*q*u*w - q*u*w^2 - p*q^3*u^2*w^2 + q^3*u^2*w^3 - 2*p*q^3*u^2*w^3";
const Q4: &str = "8*b + 8*b*w - 8*q*w + 2*b^3*p*u*w + 2*b^2*q*u*w + 2*b*p*q^2*u*w + 8*b*w^2 - 8*q*w^2 \
    + 4*b^2*q*u*w^2 + 8*b*p*q^2*u*w^2 + 2*b*p^2*q^2*u*w^2 - 8*q*w^3 + 2*b^2*q*u*w^3 \
    + 8*b*p*q^2*u*w^3 + 4*b*p^2*q^2*u*w^3 - 2*b*q^2*u*w^4 + 4*b*p*q^2*u*w^4";

/// The four generators `P1..P4` of the ideal.
pub fn l62_generators() -> Result<[LaurentPoly; 4]> {
    let m = witness_matrix();
    let cols = [0, 1, 2, 3];
    let p1 = build_haagerup(&m, [0, 1, 2], cols)?;
    let p2 = poly_parse("p^2")?.checked_mul(&build_haagerup(&m, [0, 1, 3], cols)?)?;
    let p3 = build_haagerup(&m.transpose(), [0, 1, 2], cols)?;
    let p4 = poly_parse("u*b*p*q*w + 1")?;
    Ok([p1, p2, p3, p4])
}

/// The witness multipliers `Q1..Q4`.
pub fn l62_witnesses() -> Result<[LaurentPoly; 4]> {
    Ok([poly_parse(Q1)?, poly_parse(Q2)?, poly_parse(Q3)?, poly_parse(Q4)?])
}

/// `sum P_i Q_i = 8 (b - qw)(1 + w + w^2)`.
pub fn witness_check_l62() -> Result<WitnessReport> {
    let ps = l62_generators()?;
    let qs = l62_witnesses()?;
    let mut lhs = LaurentPoly::zero();
    for (p, q) in ps.iter().zip(&qs) {
        lhs = &lhs + &p.checked_mul(q)?;
    }
    let rhs = poly_parse("8*(b - q*w)*(1 + w + w^2)")?;
    Ok(WitnessReport::new(lhs, rhs))
}

/// `-bqu(1+w+w^2) + uw(b^2+bq+q^2) + (q-bw)(u(b-qw)+1) = q - bw`.
pub fn witness_check_p63() -> Result<WitnessReport> {
    let lhs = poly_parse("-b*q*u*(1 + w + w^2) + u*w*(b^2 + b*q + q^2) + (q - b*w)*(u*(b - q*w) + 1)")?;
    let rhs = poly_parse("q - b*w")?;
    Ok(WitnessReport::new(lhs, rhs))
}
