//! Matrices of signed monomials and the polynomial gadgets built on them:
//! row orthogonality, the Haagerup bracket and the cancelling product.

use crate::error::{PolyError, Result};
use crate::parse::poly_parse;
use crate::poly::LaurentPoly;

/// A grid whose entries are each a single nonzero term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    rows: Vec<Vec<LaurentPoly>>,
}

impl SymbolicMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(PolyError::Ragged);
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                if e.as_monomial().is_none() {
                    return Err(PolyError::NotMonomial { row: i, col: j });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|s| poly_parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        Self { rows }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.nrows() {
            Ok(())
        } else {
            Err(PolyError::IndexOutOfRange {
                index: i,
                len: self.nrows(),
            })
        }
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j < self.ncols() {
            Ok(())
        } else {
            Err(PolyError::IndexOutOfRange {
                index: j,
                len: self.ncols(),
            })
        }
    }

    /// `S[x][v] / S[y][v]`.
    fn ratio(&self, x: usize, y: usize, v: usize) -> Result<LaurentPoly> {
        self.rows[x][v].checked_div(&self.rows[y][v])
    }
}

fn distinct(ix: &[usize]) -> Result<()> {
    for (n, a) in ix.iter().enumerate() {
        if ix[..n].contains(a) {
            return Err(PolyError::IndexCollision(ix.to_vec()));
        }
    }
    Ok(())
}

fn product<'a>(items: impl IntoIterator<Item = &'a LaurentPoly>) -> Result<LaurentPoly> {
    items
        .into_iter()
        .try_fold(LaurentPoly::one(), |acc, p| acc.checked_mul(p))
}

/// `(prod_v S[y][v]) * sum_v S[x][v] / S[y][v]`: the inner product of rows
/// `x` and `y` for unimodular values, with the denominators cleared.
pub fn build_ort(s: &SymbolicMatrix, x: usize, y: usize) -> Result<LaurentPoly> {
    s.check_row(x)?;
    s.check_row(y)?;
    let mut sum = LaurentPoly::zero();
    for v in 0..s.ncols() {
        sum = &sum + &s.ratio(x, y, v)?;
    }
    product(&s.rows[y])?.checked_mul(&sum)
}

/// The Haagerup bracket of rows `(i, j, k)` and columns `(p, q, r, s)`,
/// including the product of the twelve entries as prefactor.
pub fn build_haagerup(s: &SymbolicMatrix, rows: [usize; 3], cols: [usize; 4]) -> Result<LaurentPoly> {
    distinct(&rows)?;
    distinct(&cols)?;
    for &r in &rows {
        s.check_row(r)?;
    }
    for &c in &cols {
        s.check_col(c)?;
    }
    let inner = |x: usize, y: usize| -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for &c in &cols {
            acc = &acc + &s.ratio(x, y, c)?;
        }
        Ok(acc)
    };
    let [i, j, k] = rows;
    let (ij, jk, ki) = (inner(i, j)?, inner(j, k)?, inner(k, i)?);
    let (ji, kj, ik) = (inner(j, i)?, inner(k, j)?, inner(i, k)?);
    let cyclic = ij.checked_mul(&jk)?.checked_mul(&ki)?;
    let bracket = &(&(&(&cyclic - &LaurentPoly::from_int(4)) + &ij.checked_mul(&ji)?) + &jk.checked_mul(&kj)?)
        + &ki.checked_mul(&ik)?;
    let j_factor = product(rows.iter().flat_map(|&r| cols.iter().map(move |&c| s.get(r, c))))?;
    bracket.checked_mul(&j_factor)
}

/// `prod_{q >= 1} (S[x][0] S[y][q] + S[x][q] S[y][0])`, which vanishes
/// exactly when rows `x` and `y` cancel.
pub fn build_cancel(s: &SymbolicMatrix, x: usize, y: usize) -> Result<LaurentPoly> {
    s.check_row(x)?;
    s.check_row(y)?;
    if x == y {
        return Err(PolyError::IndexCollision(vec![x, y]));
    }
    let mut acc = LaurentPoly::one();
    for q in 1..s.ncols() {
        let f = &s.get(x, 0).checked_mul(s.get(y, q))? + &s.get(x, q).checked_mul(s.get(y, 0))?;
        acc = acc.checked_mul(&f)?;
    }
    Ok(acc)
}
