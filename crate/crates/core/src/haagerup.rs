//! The Haagerup bracket of a 3x4 submatrix and the quartic-product
//! fingerprint used to tell inequivalent matrices apart.
//!
//! For rows `(i, j, k)` and columns `(p, q, r, s)` let
//! `I(x, y) = sum over the four columns of h[x][.] / h[y][.]` and let `J` be
//! the product of the twelve entries. The bracket is
//!
//! ```text
//! [ I(i,j) I(j,k) I(k,i) - 4 + I(i,j) I(j,i) + I(j,k) I(k,j) + I(k,i) I(i,k) ] J
//! ```
//!
//! and vanishes on every 3x4 submatrix of a 6x6 Hadamard matrix.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::matrix::CHMatrix;

/// Whether indices refer to the matrix itself or to its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Rows,
    Columns,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaagerupBracket {
    /// The bracketed expression without the `J` factor.
    pub reduced: Complex64,
    /// `J`, which is unimodular.
    pub prefactor: Complex64,
}

impl HaagerupBracket {
    pub fn value(&self) -> Complex64 {
        self.reduced * self.prefactor
    }

    pub fn norm(&self) -> f64 {
        self.reduced.norm()
    }
}

fn distinct(ix: &[usize]) -> bool {
    ix.iter().enumerate().all(|(n, a)| !ix[..n].contains(a))
}

/// Bracket on rows `rows` and columns `cols` of `m`.
pub fn haagerup_bracket(m: &CHMatrix, rows: [usize; 3], cols: [usize; 4]) -> Result<HaagerupBracket> {
    haagerup_bracket_oriented(m, Orientation::Rows, rows, cols)
}

/// Bracket where, for [`Orientation::Columns`], `rows` index columns of `m`
/// and `cols` index rows of `m`.
pub fn haagerup_bracket_oriented(
    m: &CHMatrix,
    orientation: Orientation,
    rows: [usize; 3],
    cols: [usize; 4],
) -> Result<HaagerupBracket> {
    if !distinct(&rows) {
        return Err(HadError::IndexCollision(rows.to_vec()));
    }
    if !distinct(&cols) {
        return Err(HadError::IndexCollision(cols.to_vec()));
    }
    let h = |x: usize, y: usize| match orientation {
        Orientation::Rows => m.get(x, y),
        Orientation::Columns => m.get(y, x),
    };
    let (row_len, col_len) = match orientation {
        Orientation::Rows => (m.rows(), m.cols()),
        Orientation::Columns => (m.cols(), m.rows()),
    };
    for &r in &rows {
        if r >= row_len {
            return Err(HadError::IndexOutOfRange { index: r, len: row_len });
        }
    }
    for &c in &cols {
        if c >= col_len {
            return Err(HadError::IndexOutOfRange { index: c, len: col_len });
        }
    }
    let inner = |x: usize, y: usize| -> Complex64 { cols.iter().map(|&c| (h(x, c) / h(y, c)).value()).sum() };
    let [i, j, k] = rows;
    let (ij, jk, ki) = (inner(i, j), inner(j, k), inner(k, i));
    let (ji, kj, ik) = (inner(j, i), inner(k, j), inner(i, k));
    let reduced = ij * jk * ki - 4.0 + ij * ji + jk * kj + ki * ik;
    let prefactor = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
        .fold(Complex64::new(1.0, 0.0), |acc, (r, c)| acc * h(r, c).value());
    Ok(HaagerupBracket { reduced, prefactor })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSite {
    pub rows: [usize; 3],
    pub cols: [usize; 4],
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaagerupScanReport {
    pub max_abs_bracket: f64,
    pub argmax: Option<BracketSite>,
    pub evaluated: usize,
}

fn combos<const K: usize>(n: usize) -> Vec<[usize; K]> {
    fn go<const K: usize>(n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<[usize; K]>) {
        if cur.len() == K {
            out.push(cur.as_slice().try_into().expect("length K"));
            return;
        }
        for x in start..n {
            cur.push(x);
            go(n, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Largest bracket modulus over every row triple and column quadruple, in
/// both orientations (where the shape allows).
pub fn haagerup_scan(m: &CHMatrix) -> HaagerupScanReport {
    let mut report = HaagerupScanReport {
        max_abs_bracket: 0.0,
        argmax: None,
        evaluated: 0,
    };
    for orientation in [Orientation::Rows, Orientation::Columns] {
        let (nr, nc) = match orientation {
            Orientation::Rows => (m.rows(), m.cols()),
            Orientation::Columns => (m.cols(), m.rows()),
        };
        let quads = combos::<4>(nc);
        for rows in combos::<3>(nr) {
            for cols in &quads {
                let b = haagerup_bracket_oriented(m, orientation, rows, *cols).expect("valid indices");
                report.evaluated += 1;
                if report.argmax.is_none() || b.norm() > report.max_abs_bracket {
                    report.max_abs_bracket = b.norm();
                    report.argmax = Some(BracketSite {
                        rows,
                        cols: *cols,
                        orientation,
                    });
                }
            }
        }
    }
    report
}

/// `M[i][j] M[k][l] / (M[i][l] M[k][j])` over all `i != k`, `j != l`.
pub fn quartic_products(m: &CHMatrix) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(m.rows() * m.rows() * m.cols() * m.cols());
    for i in 0..m.rows() {
        for k in 0..m.rows() {
            if i == k {
                continue;
            }
            for j in 0..m.cols() {
                for l in 0..m.cols() {
                    if j == l {
                        continue;
                    }
                    out.push((m.get(i, j) * m.get(k, l) / (m.get(i, l) * m.get(k, j))).value());
                }
            }
        }
    }
    out
}

pub const FINGERPRINT_GRID: f64 = 1e-8;

pub(crate) fn grid_key(z: Complex64, spacing: f64) -> (i64, i64) {
    ((z.re / spacing).round() as i64, (z.im / spacing).round() as i64)
}

/// Quartic products rounded to a `1e-8` grid, deduplicated and sorted by
/// `(re, im)`. Equal for equivalent matrices up to values falling on either
/// side of a grid boundary.
pub fn haagerup_fingerprint(m: &CHMatrix) -> Vec<Complex64> {
    let keys: BTreeSet<(i64, i64)> = quartic_products(m)
        .into_iter()
        .map(|z| grid_key(z, FINGERPRINT_GRID))
        .collect();
    keys.into_iter()
        .map(|(a, b)| Complex64::new(a as f64 * FINGERPRINT_GRID, b as f64 * FINGERPRINT_GRID))
        .collect()
}

/// Hausdorff distance between two fingerprints.
pub fn fingerprint_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 0.0 } else { f64::INFINITY };
    }
    one_way(a, b).max(one_way(b, a))
}

/// True when the fingerprints differ by more than rounding can explain,
/// which certifies that the matrices are inequivalent.
pub fn fingerprints_differ(a: &CHMatrix, b: &CHMatrix) -> bool {
    fingerprint_distance(&haagerup_fingerprint(a), &haagerup_fingerprint(b)) > 4.0 * FINGERPRINT_GRID
}
