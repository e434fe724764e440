use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{PolyError, Result};

/// A sparse Laurent polynomial with rational coefficients.
///
/// Variables are kept sorted and only those with a nonzero exponent in some
/// term are retained, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), c);
        Self::from_parts(Vec::new(), terms)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(BigRational::one(), &[(name, 1)])
    }

    /// `coeff * prod name^exp`; repeated names have their exponents added.
    pub fn monomial(coeff: BigRational, factors: &[(&str, i32)]) -> Self {
        let vars = union_vars(&factors.iter().map(|(n, _)| n.to_string()).collect::<Vec<_>>(), &[]);
        let mut exps = vec![0i32; vars.len()];
        for (n, e) in factors {
            let k = vars.iter().position(|v| v == n).expect("present");
            exps[k] += e;
        }
        let mut terms = BTreeMap::new();
        terms.insert(exps, coeff);
        Self::from_parts(vars, terms)
    }

    fn from_parts(vars: Vec<String>, mut terms: BTreeMap<Vec<i32>, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<usize> = (0..vars.len())
            .filter(|&k| terms.keys().any(|e| e[k] != 0))
            .collect();
        if used.len() == vars.len() {
            return Self { vars, terms };
        }
        let new_vars = used.iter().map(|&k| vars[k].clone()).collect();
        let new_terms = terms
            .into_iter()
            .map(|(e, c)| (used.iter().map(|&k| e[k]).collect(), c))
            .collect();
        Self {
            vars: new_vars,
            terms: new_terms,
        }
    }

    /// Variables that occur with a nonzero exponent, sorted.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms as `(exponents aligned with vars(), coefficient)`, in
    /// lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term of a monomial, if this is one.
    pub fn as_monomial(&self) -> Option<(&[i32], &BigRational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn remap(&self, vars: &[String]) -> impl Iterator<Item = (Vec<i32>, BigRational)> + '_ {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let n = vars.len();
        self.terms.iter().map(move |(e, c)| {
            let mut out = vec![0i32; n];
            for (k, &p) in pos.iter().enumerate() {
                out[p] = e[k];
            }
            (out, c.clone())
        })
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let vars = union_vars(&self.vars, &other.vars);
        let mut terms: BTreeMap<Vec<i32>, BigRational> = self.remap(&vars).collect();
        for (e, c) in other.remap(&vars) {
            let c = if sign < 0 { -c } else { c };
            let slot = terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        Self::from_parts(vars, terms)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let vars = union_vars(&self.vars, &other.vars);
        let lhs: Vec<_> = self.remap(&vars).collect();
        let rhs: Vec<_> = other.remap(&vars).collect();
        let mut terms: BTreeMap<Vec<i32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &lhs {
            for (eb, cb) in &rhs {
                let e = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.checked_add(*y).ok_or(PolyError::ExponentOverflow))
                    .collect::<Result<Vec<i32>>>()?;
                let slot = terms.entry(e).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        Ok(Self::from_parts(vars, terms))
    }

    /// Multiplicative inverse of a nonzero monomial.
    pub fn monomial_inverse(&self) -> Result<Self> {
        let (e, c) = self.as_monomial().ok_or(PolyError::NonMonomialDivisor {
            terms: self.term_count(),
        })?;
        let e = e
            .iter()
            .map(|x| x.checked_neg().ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<i32>>>()?;
        let mut terms = BTreeMap::new();
        terms.insert(e, c.recip());
        Ok(Self::from_parts(self.vars.clone(), terms))
    }

    /// Division by a nonzero monomial.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        self.checked_mul(&divisor.monomial_inverse()?)
    }

    /// `self^n`; negative `n` is allowed for monomials only.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            if self.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            self.monomial_inverse()?
        } else {
            self.clone()
        };
        let mut k = n.unsigned_abs();
        if k > i32::MAX as u64 && base.terms.keys().any(|e| e.iter().any(|&x| x != 0)) {
            return Err(PolyError::ExponentOverflow);
        }
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Replaces `var` by `value`. Terms with a negative power of `var`
    /// require `value` to be a nonzero monomial.
    pub fn substitute(&self, var: &str, value: &Self) -> Result<Self> {
        let Some(k) = self.vars.iter().position(|v| v == var) else {
            return Ok(self.clone());
        };
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let power = std::mem::replace(&mut rest[k], 0);
            let factor = value.pow(power as i64).map_err(|err| match err {
                PolyError::NonMonomialDivisor { .. } => PolyError::NonMonomialSubstitution { var: var.into() },
                other => other,
            })?;
            let mut single = BTreeMap::new();
            single.insert(rest, c.clone());
            let term = Self::from_parts(self.vars.clone(), single);
            out = &out + &term.checked_mul(&factor)?;
        }
        Ok(out)
    }

    /// Numeric value at a point given as `(name, value)` pairs.
    pub fn evaluate(&self, point: &[(&str, Complex64)]) -> Result<Complex64> {
        let vals = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, z)| *z)
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (z, &p) in vals.iter().zip(e) {
                t *= z.powi(p);
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Exact value at a rational point.
    pub fn evaluate_exact(&self, point: &[(&str, BigRational)]) -> Result<BigRational> {
        let vals = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, z)| z.clone())
                    .ok_or_else(|| PolyError::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (z, &p) in vals.iter().zip(e) {
                if p < 0 && z.is_zero() {
                    return Err(PolyError::DivisionByZero);
                }
                t *= num_traits::pow::Pow::pow(z, p);
            }
            sum += t;
        }
        Ok(sum)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1)
    }
}

/// # Panics
///
/// On exponent overflow; use [`LaurentPoly::checked_mul`] to handle it.
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("exponent overflow")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &p)| p != 0)
                .map(|(v, &p)| if p == 1 { v.clone() } else { format!("{v}^{p}") })
                .collect();
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
