//! Unit-modulus complex scalars.
//!
//! Every arithmetic result is renormalized, so the stored value always
//! satisfies `|re^2 + im^2 - 1| <= 1e-12`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};

/// How far from the unit circle user-supplied values may be before they are
/// rejected instead of renormalized.
pub const INPUT_MODULUS_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RectJson", into = "RectJson")]
pub struct UnimodEntry(Complex64);

#[derive(Serialize, Deserialize)]
struct RectJson {
    re: f64,
    im: f64,
}

impl TryFrom<RectJson> for UnimodEntry {
    type Error = HadError;
    fn try_from(v: RectJson) -> Result<Self> {
        UnimodEntry::new(Complex64::new(v.re, v.im))
    }
}

impl From<UnimodEntry> for RectJson {
    fn from(u: UnimodEntry) -> Self {
        RectJson {
            re: u.0.re,
            im: u.0.im,
        }
    }
}

impl UnimodEntry {
    pub const ONE: Self = Self(Complex64::new(1.0, 0.0));
    pub const MINUS_ONE: Self = Self(Complex64::new(-1.0, 0.0));
    pub const I: Self = Self(Complex64::new(0.0, 1.0));
    pub const MINUS_I: Self = Self(Complex64::new(0.0, -1.0));

    /// Accepts `z` if it lies within [`INPUT_MODULUS_SLACK`] of the unit
    /// circle and renormalizes it.
    pub fn new(z: Complex64) -> Result<Self> {
        let modulus = z.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > INPUT_MODULUS_SLACK {
            return Err(HadError::NotUnimodular {
                value: format!("{z}"),
                modulus,
            });
        }
        Ok(Self(z / modulus))
    }

    /// Renormalizes a value already known to be close to the unit circle.
    pub(crate) fn renormalize(z: Complex64) -> Self {
        let n = z.norm();
        debug_assert!(n > 0.5 && n < 2.0, "renormalize called on {z}");
        Self(z / n)
    }

    /// `e^{2 pi i t}`. Quarter turns are produced exactly.
    pub fn from_turns(t: f64) -> Self {
        let frac = t.rem_euclid(1.0);
        let quarters = frac * 4.0;
        if quarters == quarters.trunc() {
            return match quarters as u32 {
                0 | 4 => Self::ONE,
                1 => Self::I,
                2 => Self::MINUS_ONE,
                _ => Self::MINUS_I,
            };
        }
        Self::renormalize(Complex64::from_polar(1.0, TAU * frac))
    }

    pub fn from_angle(radians: f64) -> Self {
        Self::from_turns(radians / TAU)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_turns(rng.random::<f64>())
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    /// Phase in turns, in `[0, 1)`.
    pub fn turns(self) -> f64 {
        (self.0.arg() / TAU).rem_euclid(1.0)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    /// The multiplicative inverse, which for unit modulus is the conjugate.
    #[inline]
    pub fn recip(self) -> Self {
        self.conj()
    }

    pub fn powi(self, n: i32) -> Self {
        let base = if n < 0 { self.conj() } else { self };
        let mut acc = Self::ONE;
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }

    /// The three cube roots, starting from the principal one.
    pub fn cube_roots(self) -> [Self; 3] {
        let t = self.turns() / 3.0;
        [
            Self::from_turns(t),
            Self::from_turns(t + 1.0 / 3.0),
            Self::from_turns(t + 2.0 / 3.0),
        ]
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.0 - other.0).norm()
    }

    pub fn is_close(self, other: Self, eps: f64) -> bool {
        self.dist(other) <= eps
    }

    pub fn is_minus_one(self, eps: f64) -> bool {
        (self.0 + 1.0).norm() <= eps
    }

    pub fn is_one(self, eps: f64) -> bool {
        (self.0 - 1.0).norm() <= eps
    }
}

impl Mul for UnimodEntry {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::renormalize(self.0 * rhs.0)
    }
}

impl Div for UnimodEntry {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        Self::renormalize(self.0 * rhs.0.conj())
    }
}

impl Neg for UnimodEntry {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl From<UnimodEntry> for Complex64 {
    fn from(u: UnimodEntry) -> Self {
        u.0
    }
}

impl fmt::Debug for UnimodEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+.6}{:+.6}i)", self.0.re, self.0.im)
    }
}

impl fmt::Display for UnimodEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
