use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::json::MatrixJson;
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

pub const ORDER: usize = 6;

/// A grid of unit-modulus entries: either 6x6, or k x 6 with k in {2, 3, 4}.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CHMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<UnimodEntry>,
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if cols == ORDER && matches!(rows, 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(HadError::Shape { rows, cols })
    }
}

impl CHMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<UnimodEntry>) -> Result<Self> {
        check_shape(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(HadError::Parse(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<UnimodEntry>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(HadError::Parse("ragged rows".into()));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> UnimodEntry) -> Result<Self> {
        check_shape(rows, cols)?;
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Shape is known to be valid; used by constructors inside the crate.
    pub(crate) fn square_from_fn(f: impl Fn(usize, usize) -> UnimodEntry) -> Self {
        Self::from_fn(ORDER, ORDER, f).expect("6x6 is a valid shape")
    }

    pub fn ones(rows: usize) -> Result<Self> {
        Self::from_fn(rows, ORDER, |_, _| UnimodEntry::ONE)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> UnimodEntry {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[UnimodEntry] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[UnimodEntry] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<UnimodEntry>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_complex_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|u| u.value()).collect())
            .collect()
    }

    pub(crate) fn check_row(&self, i: usize) -> Result<()> {
        if i < self.rows {
            Ok(())
        } else {
            Err(HadError::IndexOutOfRange {
                index: i,
                len: self.rows,
            })
        }
    }

    pub(crate) fn check_col(&self, j: usize) -> Result<()> {
        if j < self.cols {
            Ok(())
        } else {
            Err(HadError::IndexOutOfRange {
                index: j,
                len: self.cols,
            })
        }
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(HadError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Result<Self> {
        self.require_square()?;
        Ok(Self::square_from_fn(|i, j| self.get(j, i)))
    }

    pub fn conj_transpose(&self) -> Result<Self> {
        self.require_square()?;
        Ok(Self::square_from_fn(|i, j| self.get(j, i).conj()))
    }

    /// `sum_k M[i][k] / M[j][k]`, the Hermitian inner product of two
    /// unimodular rows.
    pub fn inner_product_rows(&self, i: usize, j: usize) -> Result<Complex64> {
        self.check_row(i)?;
        self.check_row(j)?;
        Ok(row_inner(self.row(i), self.row(j)))
    }

    /// Largest |<r_i, r_j>| over distinct row pairs.
    pub fn max_row_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i + 1..self.rows {
                worst = worst.max(row_inner(self.row(i), self.row(j)).norm());
            }
        }
        worst
    }

    pub fn rows_orthogonal(&self, tol: &Tolerances) -> (bool, f64) {
        let r = self.max_row_residual();
        (r <= tol.eps_orth, r)
    }

    /// Returns `(flag, max_residual)` where the residual is the largest
    /// off-diagonal inner product modulus.
    pub fn is_hadamard(&self, tol: &Tolerances) -> Result<(bool, f64)> {
        self.require_square()?;
        Ok(self.rows_orthogonal(tol))
    }

    /// Like [`CHMatrix::is_hadamard`], but a failure is a `NotHadamard` error.
    pub fn require_hadamard(&self, tol: &Tolerances) -> Result<f64> {
        let (ok, residual) = self.is_hadamard(tol)?;
        if ok {
            Ok(residual)
        } else {
            Err(HadError::NotHadamard { residual })
        }
    }

    /// First row and first column equal to 1 within `eps`.
    pub fn is_normalized(&self, eps: f64) -> bool {
        (0..self.cols).all(|j| self.get(0, j).is_one(eps))
            && (0..self.rows).all(|i| self.get(i, 0).is_one(eps))
    }

    /// Largest entrywise distance; `f64::INFINITY` on shape mismatch.
    pub fn max_entry_distance(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.max_entry_distance(other) <= eps
    }

    /// Rows and columns permuted so that `out[i][j] = self[rows[i]][cols[j]]`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }
}

#[inline]
pub(crate) fn row_inner(x: &[UnimodEntry], y: &[UnimodEntry]) -> Complex64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.value() * b.value().conj())
        .sum()
}

impl fmt::Debug for CHMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CHMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for u in self.row(i) {
                write!(f, " {u:?}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for CHMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|u| format!("{:+.4}{:+.4}i", u.re(), u.im()))
                .collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert!(CHMatrix::ones(6).is_ok());
        assert!(CHMatrix::ones(3).is_ok());
        assert!(CHMatrix::ones(5).is_err());
        assert!(CHMatrix::from_fn(6, 5, |_, _| UnimodEntry::ONE).is_err());
    }

    #[test]
    fn all_ones_is_not_hadamard() {
        let m = CHMatrix::ones(6).unwrap();
        let (ok, r) = m.is_hadamard(&Tolerances::default()).unwrap();
        assert!(!ok);
        assert_eq!(r, 6.0);
        assert_eq!(m.inner_product_rows(2, 2).unwrap(), Complex64::new(6.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        let m = CHMatrix::ones(4).unwrap();
        assert!(matches!(
            m.is_hadamard(&Tolerances::default()),
            Err(HadError::NonSquare { .. })
        ));
        assert!(m.inner_product_rows(0, 4).is_err());
    }
}
