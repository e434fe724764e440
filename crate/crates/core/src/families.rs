//! Named matrices and parametric families of order 6, together with the
//! scalar relations that constrain their parameters.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::matrix::CHMatrix;
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

/// Choice of primitive cube root of unity `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeRoot {
    /// `e^{2 pi i / 3}`
    #[default]
    Primary,
    /// `e^{4 pi i / 3}`
    Conjugate,
}

impl CubeRoot {
    pub fn value(self) -> UnimodEntry {
        match self {
            CubeRoot::Primary => UnimodEntry::from_turns(1.0 / 3.0),
            CubeRoot::Conjugate => UnimodEntry::from_turns(2.0 / 3.0),
        }
    }

    pub fn other(self) -> Self {
        match self {
            CubeRoot::Primary => CubeRoot::Conjugate,
            CubeRoot::Conjugate => CubeRoot::Primary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierTParams {
    pub a: UnimodEntry,
    pub b: UnimodEntry,
    #[serde(default)]
    pub w: CubeRoot,
}

impl FourierTParams {
    pub fn new(a: UnimodEntry, b: UnimodEntry) -> Self {
        Self {
            a,
            b,
            w: CubeRoot::Primary,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(UnimodEntry::random(rng), UnimodEntry::random(rng))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct X6Params {
    pub beta: UnimodEntry,
    pub gamma: UnimodEntry,
    pub epsilon: UnimodEntry,
    pub phi: UnimodEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X6Var {
    Beta,
    Gamma,
    Epsilon,
    Phi,
}

impl X6Params {
    pub fn get(&self, var: X6Var) -> UnimodEntry {
        match var {
            X6Var::Beta => self.beta,
            X6Var::Gamma => self.gamma,
            X6Var::Epsilon => self.epsilon,
            X6Var::Phi => self.phi,
        }
    }

    pub fn with(mut self, var: X6Var, value: UnimodEntry) -> Self {
        match var {
            X6Var::Beta => self.beta = value,
            X6Var::Gamma => self.gamma = value,
            X6Var::Epsilon => self.epsilon = value,
            X6Var::Phi => self.phi = value,
        }
        self
    }

    pub fn as_complex(&self) -> [Complex64; 4] {
        [self.beta, self.gamma, self.epsilon, self.phi].map(UnimodEntry::value)
    }

    pub fn implicit_residual(&self) -> f64 {
        implicit(self.as_complex()).norm()
    }
}

/// `F6^T(a, b)`, the transposed Fourier family.
pub fn f6t(p: &FourierTParams) -> CHMatrix {
    let w = p.w.value();
    let w2 = w * w;
    let one = UnimodEntry::ONE;
    let (a, b) = (p.a, p.b);
    let rows = [
        [one, one, one, one, one, one],
        [one, one, one, -one, -one, -one],
        [one, w, w2, a, a * w, a * w2],
        [one, w, w2, -a, -(a * w), -(a * w2)],
        [one, w2, w, b, b * w2, b * w],
        [one, w2, w, -b, -(b * w2), -(b * w)],
    ];
    CHMatrix::square_from_fn(|i, j| rows[i][j])
}

/// Entries of the 2-circulant family, without checking the implicit equation.
pub fn x6_unchecked(p: &X6Params) -> CHMatrix {
    let X6Params {
        beta: b,
        gamma: g,
        epsilon: e,
        phi: f,
    } = *p;
    let one = UnimodEntry::ONE;
    let ge = (g * e).recip();
    let bf = (b * f).recip();
    let e_b = e / b;
    let e_gf = e / (g * f);
    let f_g = f / g;
    let f_be = f / (b * e);
    let bg = (b * g).recip();
    let rows = [
        [one, one, one, one, one, one],
        [one, -one, -ge, -bf, ge, bf],
        [one, -e_b, -one, -e_gf, e_gf, e_b],
        [one, -f_g, -f_be, -one, f_g, f_be],
        [one, e_b, f_be, bf, bg, g / (b * b)],
        [one, f_g, ge, e_gf, b / (g * g), bg],
    ];
    CHMatrix::square_from_fn(|i, j| rows[i][j])
}

/// `X6(beta, gamma, epsilon, phi)`; fails off the implicit variety.
pub fn x6(p: &X6Params, tol: &Tolerances) -> Result<CHMatrix> {
    let residual = p.implicit_residual();
    if residual > tol.eps_orth {
        return Err(HadError::ImplicitViolation { residual });
    }
    Ok(x6_unchecked(p))
}

/// The Dita family `D6(c)`.
pub fn d6(c: UnimodEntry) -> CHMatrix {
    let one = UnimodEntry::ONE;
    let i = UnimodEntry::I;
    let ic = i * c;
    let i_c = i / c;
    let rows = [
        [one, one, one, one, one, one],
        [one, -one, i, -i, -ic, ic],
        [one, i, -one, i, -i, -i],
        [one, -i, i, -one, ic, -ic],
        [one, -i_c, -i, i_c, -one, i],
        [one, i_c, -i, -i_c, i, -one],
    ];
    CHMatrix::square_from_fn(|r, s| rows[r][s])
}

/// The one-parameter Fourier subfamily `H(a)`.
pub fn h_a(a: UnimodEntry, w: CubeRoot) -> CHMatrix {
    let w = w.value();
    let w2 = w * w;
    let one = UnimodEntry::ONE;
    let rows = [
        [one, one, one, one, one, one],
        [one, -one, one, -one, a, -a],
        [one, one, w, w, w2, w2],
        [one, -one, w, -w, a * w2, -(a * w2)],
        [one, one, w2, w2, w, w],
        [one, -one, w2, -w2, a * w, -(a * w)],
    ];
    CHMatrix::square_from_fn(|i, j| rows[i][j])
}

fn small(rows: &[[UnimodEntry; 6]]) -> CHMatrix {
    CHMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("fixed shape")
}

/// First family of 3x6 matrices with pairwise cancelling rows.
pub fn r1(q: UnimodEntry) -> CHMatrix {
    let one = UnimodEntry::ONE;
    let i = UnimodEntry::I;
    small(&[
        [one; 6],
        [one, i, one, -i, -one, -one],
        [one, -one, -i, i, q, -q],
    ])
}

/// Second family of 3x6 matrices with pairwise cancelling rows.
pub fn r2(q: UnimodEntry) -> CHMatrix {
    let one = UnimodEntry::ONE;
    let i = UnimodEntry::I;
    small(&[
        [one; 6],
        [one, i, -one, -i, q, -q],
        [one, -one, -q, i * q, -(i * q), q],
    ])
}

/// A 4x6 matrix with orthogonal rows that embeds in no 6x6 Hadamard matrix.
pub fn w_example() -> CHMatrix {
    let s = std::f64::consts::SQRT_2;
    let c = |re: f64, im: f64| UnimodEntry::new(Complex64::new(re, im)).expect("unimodular");
    let one = UnimodEntry::ONE;
    let i = UnimodEntry::I;
    small(&[
        [one; 6],
        [one, i, -one, -i, c(1.0 / s, -1.0 / s), c(-1.0 / s, 1.0 / s)],
        [
            one,
            -one,
            c(-1.0 / s, 1.0 / s),
            c(1.0 / s, 1.0 / s),
            c(-1.0 / s, -1.0 / s),
            c(1.0 / s, -1.0 / s),
        ],
        [
            one,
            c(2.0 * s / 3.0, 1.0 / 3.0),
            c(-1.0 / s, -1.0 / s),
            c((-4.0 - s) / 6.0, (4.0 - s) / 6.0),
            c(-1.0 / 3.0, 2.0 * s / 3.0),
            -i,
        ],
    ])
}

/// The matrix `H^(1,3)(a, b, c, d)`; requires the `h33` relation and its
/// conjugate companion.
pub fn h13(
    a: UnimodEntry,
    b: UnimodEntry,
    c: UnimodEntry,
    d: UnimodEntry,
    tol: &Tolerances,
) -> Result<CHMatrix> {
    let args = [a, b, c, d].map(UnimodEntry::value);
    for rel in [Relation::H33, Relation::H33Conj] {
        let residual = rel.eval(&args)?.norm();
        if residual > tol.eps_orth {
            return Err(HadError::RelationViolation {
                relation: rel.name().into(),
                residual,
            });
        }
    }
    Ok(h13_unchecked(a, b, c, d))
}

pub fn h13_unchecked(a: UnimodEntry, b: UnimodEntry, c: UnimodEntry, d: UnimodEntry) -> CHMatrix {
    let one = UnimodEntry::ONE;
    let ac = a * c;
    let rows = [
        [one, one, one, one, one, one],
        [one, -one, a, b, -a, -b],
        [one, c, -one, d, -d, -c],
        [one, ac / b, ac / d, -one, -(ac / b), -(ac / d)],
        [one, -c, -(ac / d), -b, ac, -(b * c / d)],
        [one, -(ac / b), -a, -d, -(a * d / b), ac],
    ];
    CHMatrix::square_from_fn(|i, j| rows[i][j])
}

fn implicit([b, g, e, f]: [Complex64; 4]) -> Complex64 {
    b * g * e * e + b * g * f + b * b * e * f + g * e * f + b * g * g * e * f + b * g * e * f * f
}

/// Scalar relations between family parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `(beta, gamma, epsilon, phi)`: the equation cutting out the 2-circulant family.
    Implicit,
    /// `(a, b, c, d)`: `ac + bc - d + bd + cd - acd`.
    H33,
    /// `(a, b, c, d)`: `b - ab - ac + abc - ad - bd`.
    H33Conj,
    /// `(a, d)`: `a^2 - a + 2ad + d^2 - ad^2`.
    Subfam,
    /// `(a, b)`: `a - a^2 - 2ab - b^2 + ab^2`.
    Sub2,
    /// `(a, b)`: `a^2 - b + 2ab - a^2 b + b^2`.
    Case5,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Implicit,
        Relation::H33,
        Relation::H33Conj,
        Relation::Subfam,
        Relation::Sub2,
        Relation::Case5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Implicit => "implicit",
            Relation::H33 => "h33",
            Relation::H33Conj => "h33conj",
            Relation::Subfam => "subfam",
            Relation::Sub2 => "sub2",
            Relation::Case5 => "case5",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Relation::Implicit | Relation::H33 | Relation::H33Conj => 4,
            Relation::Subfam | Relation::Sub2 | Relation::Case5 => 2,
        }
    }

    pub fn eval(self, p: &[Complex64]) -> Result<Complex64> {
        if p.len() != self.arity() {
            return Err(HadError::RelationArity {
                relation: self.name().into(),
                expected: self.arity(),
                got: p.len(),
            });
        }
        Ok(match self {
            Relation::Implicit => implicit([p[0], p[1], p[2], p[3]]),
            Relation::H33 => {
                let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                a * c + b * c - d + b * d + c * d - a * c * d
            }
            Relation::H33Conj => {
                let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
                b - a * b - a * c + a * b * c - a * d - b * d
            }
            Relation::Subfam => {
                let (a, d) = (p[0], p[1]);
                a * a - a + 2.0 * a * d + d * d - a * d * d
            }
            Relation::Sub2 => {
                let (a, b) = (p[0], p[1]);
                a - a * a - 2.0 * a * b - b * b + a * b * b
            }
            Relation::Case5 => {
                let (a, b) = (p[0], p[1]);
                a * a - b + 2.0 * a * b - a * a * b + b * b
            }
        })
    }
}

impl FromStr for Relation {
    type Err = HadError;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| HadError::UnknownRelation(s.into()))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates a named relation at the given parameters.
pub fn eval_relation(name: &str, params: &[Complex64]) -> Result<Complex64> {
    name.parse::<Relation>()?.eval(params)
}

/// Roots of `a x^2 + b x + c`, computed with the cancellation-free pairing.
/// Falls back to the linear equation when `|a| < 1e-12`.
pub fn solve_quadratic(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    if a.norm() < 1e-12 {
        return if b.norm() < 1e-300 {
            Vec::new()
        } else {
            vec![-c / b]
        };
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    let sign = if (b.conj() * disc).re >= 0.0 { 1.0 } else { -1.0 };
    let q = -(b + sign * disc) / 2.0;
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / a, c / q]
}

/// Quadratic coefficients of the implicit equation in one variable, with
/// the other three fixed.
fn implicit_coefficients(var: X6Var, k: &X6Params) -> (Complex64, Complex64, Complex64) {
    let [b, g, e, f] = k.as_complex();
    match var {
        X6Var::Phi => (b * g * e, b * g + b * b * e + g * e + b * g * g * e, b * g * e * e),
        X6Var::Beta => (e * f, g * e * e + g * f + g * g * e * f + g * e * f * f, g * e * f),
        X6Var::Gamma => (b * e * f, b * e * e + b * f + e * f + b * e * f * f, b * b * e * f),
        X6Var::Epsilon => (b * g, b * b * f + g * f + b * g * g * f + b * g * f * f, b * g * f),
    }
}

const ROOT_MODULUS_SLACK: f64 = 1e-7;
const ROOT_RESIDUAL: f64 = 1e-9;

/// Solves the implicit equation for `unknown` given the other three
/// parameters (the value stored for `unknown` in `known` is ignored).
/// Only unimodular roots with residual at most 1e-9 are returned.
pub fn solve_implicit(known: &X6Params, unknown: X6Var) -> Vec<UnimodEntry> {
    let (a, b, c) = implicit_coefficients(unknown, known);
    let mut out: Vec<UnimodEntry> = Vec::new();
    for root in solve_quadratic(a, b, c) {
        if (root.norm() - 1.0).abs() > ROOT_MODULUS_SLACK {
            continue;
        }
        let u = UnimodEntry::renormalize(root);
        if known.with(unknown, u).implicit_residual() > ROOT_RESIDUAL {
            continue;
        }
        if !out.iter().any(|v| v.is_close(u, 1e-12)) {
            out.push(u);
        }
    }
    out
}

/// Draws points of the 2-circulant family.
///
/// `beta` and `gamma` are drawn uniformly; the phase of `epsilon` is scanned
/// on a grid for places where a `phi` root of the implicit equation reaches
/// the unit circle, each such place is refined by golden-section search,
/// and `phi` comes from [`solve_implicit`]. Pairs `(beta, gamma)` without a
/// crossing are rejected and redrawn.
#[derive(Debug, Clone, Copy)]
pub struct X6Sampler {
    pub grid: usize,
    pub max_attempts: usize,
}

impl Default for X6Sampler {
    fn default() -> Self {
        Self {
            grid: 720,
            max_attempts: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct X6Draw {
    pub params: X6Params,
    /// Number of `(beta, gamma)` pairs drawn, including the accepted one.
    pub attempts: usize,
}

fn phi_offset(beta: UnimodEntry, gamma: UnimodEntry, turns: f64) -> f64 {
    let k = X6Params {
        beta,
        gamma,
        epsilon: UnimodEntry::from_turns(turns),
        phi: UnimodEntry::ONE,
    };
    let (a, b, c) = implicit_coefficients(X6Var::Phi, &k);
    solve_quadratic(a, b, c)
        .into_iter()
        .map(|r| r.norm().ln().abs())
        .fold(f64::INFINITY, f64::min)
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-16 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

impl X6Sampler {
    /// All crossings found for a fixed `(beta, gamma)`.
    pub fn crossings(&self, beta: UnimodEntry, gamma: UnimodEntry) -> Vec<X6Params> {
        let n = self.grid.max(8);
        let step = 1.0 / n as f64;
        let vals: Vec<f64> = (0..n).map(|k| phi_offset(beta, gamma, k as f64 * step)).collect();
        let mut found = Vec::new();
        for k in 0..n {
            let prev = vals[(k + n - 1) % n];
            let next = vals[(k + 1) % n];
            if !(vals[k] <= prev && vals[k] <= next && vals[k] < 0.05) {
                continue;
            }
            let centre = k as f64 * step;
            let t = golden_min(|t| phi_offset(beta, gamma, t), centre - step, centre + step);
            if phi_offset(beta, gamma, t) > 1e-10 {
                continue;
            }
            let base = X6Params {
                beta,
                gamma,
                epsilon: UnimodEntry::from_turns(t),
                phi: UnimodEntry::ONE,
            };
            for phi in solve_implicit(&base, X6Var::Phi) {
                found.push(base.with(X6Var::Phi, phi));
            }
        }
        found
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<X6Draw> {
        for attempt in 1..=self.max_attempts {
            let beta = UnimodEntry::random(rng);
            let gamma = UnimodEntry::random(rng);
            let found = self.crossings(beta, gamma);
            if !found.is_empty() {
                let params = found[rng.random_range(0..found.len())];
                return Ok(X6Draw {
                    params,
                    attempts: attempt,
                });
            }
        }
        Err(HadError::SamplerExhausted {
            attempts: self.max_attempts,
        })
    }
}

/// One sample of the 2-circulant family with the default sampler.
pub fn sample_x6<R: Rng + ?Sized>(rng: &mut R) -> Result<X6Params> {
    X6Sampler::default().sample(rng).map(|d| d.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn f6t_shape_and_intersection_point() {
        let m = f6t(&FourierTParams::new(UnimodEntry::ONE, UnimodEntry::ONE));
        let expect = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
        for (j, e) in expect.iter().enumerate() {
            assert_eq!(m.get(1, j).value(), c(*e, 0.0));
        }
        let w = CubeRoot::Primary.value();
        let ww = f6t(&FourierTParams::new(w, w));
        assert!(ww.is_hadamard(&tol()).unwrap().0);
    }

    #[test]
    fn w_cube_root_identity() {
        for w in [CubeRoot::Primary, CubeRoot::Conjugate] {
            let w = w.value();
            assert!((1.0 + w.value() + (w * w).value()).norm() < 1e-15);
        }
    }

    #[test]
    fn random_families_are_hadamard() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = FourierTParams::random(&mut rng);
            let (ok, r) = f6t(&p).is_hadamard(&tol()).unwrap();
            assert!(ok && r <= 1e-9, "f6t residual {r}");
            let a = UnimodEntry::random(&mut rng);
            assert!(h_a(a, CubeRoot::Primary).is_hadamard(&tol()).unwrap().0);
            assert!(d6(a).is_hadamard(&tol()).unwrap().0);
        }
    }

    #[test]
    fn d6_entries() {
        let m = d6(UnimodEntry::ONE);
        let quarter = [
            UnimodEntry::ONE,
            UnimodEntry::I,
            UnimodEntry::MINUS_ONE,
            UnimodEntry::MINUS_I,
        ];
        assert!(m.entries().iter().all(|u| quarter.iter().any(|q| u.is_close(*q, 1e-15))));
        let m = d6(UnimodEntry::from_angle(0.7));
        for k in 1..6 {
            assert_eq!(m.get(k, k), UnimodEntry::MINUS_ONE);
        }
        assert!(m.is_hadamard(&tol()).unwrap().0);
    }

    #[test]
    fn h_a_minus_w_has_extra_minus_ones() {
        let w = CubeRoot::Primary.value();
        let m = h_a(-w, CubeRoot::Primary);
        let mut found = Vec::new();
        for i in 1..6 {
            for j in 1..6 {
                if m.get(i, j).is_minus_one(1e-12) {
                    found.push((i, j));
                }
            }
        }
        assert_eq!(found, vec![(1, 1), (1, 3), (3, 1), (3, 4), (5, 1)]);
    }

    #[test]
    fn small_families_have_orthogonal_rows() {
        let q = UnimodEntry::from_angle(0.41);
        for m in [r1(UnimodEntry::ONE), r1(q), r2(q), w_example()] {
            let (ok, r) = m.rows_orthogonal(&tol());
            assert!(ok, "residual {r}");
        }
        let w = w_example();
        assert!(w.inner_product_rows(0, 3).unwrap().norm() < 1e-12);
        // The first three rows of W are R2((1-i)/sqrt 2).
        let q = UnimodEntry::from_turns(-1.0 / 8.0);
        let r = r2(q);
        for i in 0..3 {
            for j in 0..6 {
                assert!(w.get(i, j).is_close(r.get(i, j), 1e-15));
            }
        }
    }

    #[test]
    fn x6_trivial_params_violate_implicit() {
        let one = UnimodEntry::ONE;
        let p = X6Params {
            beta: one,
            gamma: one,
            epsilon: one,
            phi: one,
        };
        match x6(&p, &tol()) {
            Err(HadError::ImplicitViolation { residual }) => assert!((residual - 6.0).abs() < 1e-12),
            other => panic!("expected violation, got {other:?}"),
        }
        assert_eq!(eval_relation("implicit", &[c(1.0, 0.0); 4]).unwrap(), c(6.0, 0.0));
    }

    #[test]
    fn solve_phi_with_trivial_knowns_has_no_unimodular_root() {
        let one = UnimodEntry::ONE;
        let p = X6Params {
            beta: one,
            gamma: one,
            epsilon: one,
            phi: one,
        };
        let (a, b, cc) = implicit_coefficients(X6Var::Phi, &p);
        assert_eq!((a, b, cc), (c(1.0, 0.0), c(4.0, 0.0), c(1.0, 0.0)));
        let mut roots: Vec<f64> = solve_quadratic(a, b, cc).iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        let s3 = 3f64.sqrt();
        assert!((roots[0] - (-2.0 - s3)).abs() < 1e-12 && (roots[1] - (-2.0 + s3)).abs() < 1e-12);
        assert!(solve_implicit(&p, X6Var::Phi).is_empty());
    }

    #[test]
    fn quadratic_linear_fallback() {
        let r = solve_quadratic(c(0.0, 0.0), c(2.0, 0.0), c(-4.0, 0.0));
        assert_eq!(r, vec![c(2.0, 0.0)]);
        assert!(solve_quadratic(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_empty());
    }

    #[test]
    fn h13_relations() {
        let i = UnimodEntry::I;
        let m = h13(i, -i, i, i, &tol()).unwrap();
        assert!(m.is_hadamard(&tol()).unwrap().0);
        let one = UnimodEntry::ONE;
        match h13(one, one, one, one, &tol()) {
            Err(HadError::RelationViolation { relation, residual }) => {
                assert_eq!(relation, "h33");
                assert!((residual - 2.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let h = eval_relation("h33", &[c(0.0, 1.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 1.0)]).unwrap();
        assert!(h.norm() < 1e-15);
    }

    #[test]
    fn relation_errors() {
        assert!(matches!(
            eval_relation("nope", &[]),
            Err(HadError::UnknownRelation(_))
        ));
        assert!(matches!(
            eval_relation("sub2", &[c(1.0, 0.0)]),
            Err(HadError::RelationArity { .. })
        ));
    }

    #[test]
    fn every_variable_solves_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = sample_x6(&mut rng).unwrap();
        for var in [X6Var::Beta, X6Var::Gamma, X6Var::Epsilon, X6Var::Phi] {
            let roots = solve_implicit(&p, var);
            assert!(
                roots.iter().any(|r| r.is_close(p.get(var), 1e-7)),
                "{var:?} not recovered"
            );
        }
    }

    #[test]
    fn x6_samples_match_h13_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let p = sample_x6(&mut rng).unwrap();
            let m = x6(&p, &tol()).unwrap();
            assert!(m.is_hadamard(&tol()).unwrap().0);
            let (a, b, cc, d) = (m.get(1, 2), m.get(1, 3), m.get(2, 1), m.get(2, 3));
            let args = [a, b, cc, d].map(UnimodEntry::value);
            assert!(Relation::H33.eval(&args).unwrap().norm() <= 1e-9);
            let h = h13(a, b, cc, d, &tol()).unwrap();
            assert!(h.approx_eq(&m, 1e-12));
        }
    }

    #[test]
    fn sampler_is_deterministic_per_seed() {
        let a = sample_x6(&mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_x6(&mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(a.implicit_residual() <= 1e-9);
    }
}
