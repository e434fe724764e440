//! Detection of `-1` patterns in normalized matrices and the family
//! classifier built on them.
//!
//! Pattern A is a non-initial row holding at least three entries equal to
//! `-1`; matrices with it belong to the transposed Fourier family. Pattern B
//! is three `-1` entries in distinct non-initial rows and columns; matrices
//! with it belong to the 2-circulant family.

use serde::{Deserialize, Serialize};

use crate::cancel::{cancelling_summary, karlsson_blocks, BlockPairing};
use crate::equivalence::dephase_with_move;
use crate::error::{HadError, Result};
use crate::matrix::CHMatrix;
use crate::tolerance::Tolerances;

/// Positions of `-1` entries outside the first row and column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusOnePattern {
    pub positions: Vec<(usize, usize)>,
}

impl MinusOnePattern {
    pub fn of(m: &CHMatrix, eps: f64) -> Result<Self> {
        require_normalized(m, eps)?;
        let mut positions = Vec::new();
        for i in 1..m.rows() {
            for j in 1..m.cols() {
                if m.get(i, j).is_minus_one(eps) {
                    positions.push((i, j));
                }
            }
        }
        Ok(Self { positions })
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.positions.contains(&(i, j))
    }

    /// Number of distinct columns holding at least one `-1`.
    pub fn column_count(&self) -> usize {
        let mut cols: Vec<usize> = self.positions.iter().map(|p| p.1).collect();
        cols.sort_unstable();
        cols.dedup();
        cols.len()
    }
}

fn require_normalized(m: &CHMatrix, eps: f64) -> Result<()> {
    if m.is_normalized(eps) {
        Ok(())
    } else {
        Err(HadError::NotNormalized)
    }
}

/// Three `-1` entries at `(rows[k], cols[k])`, with `rows` increasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub rows: [usize; 3],
    pub cols: [usize; 3],
}

/// Smallest non-initial row with at least three `-1` entries.
pub fn detect_pattern_a(m: &CHMatrix, tol: &Tolerances) -> Result<Option<usize>> {
    let pat = MinusOnePattern::of(m, tol.eps_entry)?;
    Ok(pattern_a_in(&pat, m.rows()))
}

fn pattern_a_in(pat: &MinusOnePattern, rows: usize) -> Option<usize> {
    (1..rows).find(|&i| pat.positions.iter().filter(|p| p.0 == i).count() >= 3)
}

/// First 3-matching of `-1` entries in distinct rows and columns.
pub fn detect_pattern_b(m: &CHMatrix, tol: &Tolerances) -> Result<Option<Matching>> {
    let pat = MinusOnePattern::of(m, tol.eps_entry)?;
    Ok(all_matchings(&pat, m.rows(), m.cols()).into_iter().next())
}

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Every 3-matching in the `-1` incidence, in a fixed order.
pub fn all_matchings(pat: &MinusOnePattern, rows: usize, cols: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for r in triples(rows) {
        for c in triples(cols) {
            for p in PERMS3 {
                let cs = [c[p[0]], c[p[1]], c[p[2]]];
                if (0..3).all(|k| pat.contains(r[k], cs[k])) {
                    out.push(Matching { rows: r, cols: cs });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TransposedFourier,
    TwoCirculant,
    Both,
    None,
}

impl Verdict {
    pub fn from_patterns(a: bool, b: bool) -> Self {
        match (a, b) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::TransposedFourier,
            (false, true) => Verdict::TwoCirculant,
            (false, false) => Verdict::None,
        }
    }

    pub fn is_transposed_fourier(self) -> bool {
        matches!(self, Verdict::TransposedFourier | Verdict::Both)
    }

    pub fn is_two_circulant(self) -> bool {
        matches!(self, Verdict::TwoCirculant | Verdict::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub pattern_a: Option<usize>,
    pub pattern_b: Option<Matching>,
    pub regular: bool,
    pub dita_triangle: Option<[usize; 3]>,
    pub karlsson: Option<BlockPairing>,
    pub hadamard_residual: f64,
    /// Distinct non-initial columns of the dephased matrix holding a `-1`.
    pub minus_one_columns: usize,
    /// Set when three columns carry a `-1` yet neither pattern was found,
    /// which should only happen when tolerances are too tight for the data.
    pub routing_conflict: bool,
}

fn verdict_at(m: &CHMatrix, pr: usize, pc: usize, tol: &Tolerances) -> Result<(MinusOnePattern, Option<usize>, Option<Matching>)> {
    let (n, _) = dephase_with_move(m, pr, pc)?;
    let pat = MinusOnePattern::of(&n, tol.eps_entry)?;
    let a = pattern_a_in(&pat, n.rows());
    let b = all_matchings(&pat, n.rows(), n.cols()).into_iter().next();
    Ok((pat, a, b))
}

/// Classifies a Hadamard matrix by the `-1` patterns of its dephasing at
/// pivot `(0, 0)`.
pub fn classify(m: &CHMatrix, tol: &Tolerances) -> Result<ClassificationReport> {
    let residual = m.require_hadamard(tol)?;
    let (pat, pattern_a, pattern_b) = verdict_at(m, 0, 0, tol)?;
    let verdict = Verdict::from_patterns(pattern_a.is_some(), pattern_b.is_some());
    let summary = cancelling_summary(m, tol)?;
    let minus_one_columns = pat.column_count();
    Ok(ClassificationReport {
        verdict,
        pattern_a,
        pattern_b,
        regular: summary.regular,
        dita_triangle: summary.triangle,
        karlsson: karlsson_blocks(m, tol)?,
        hadamard_residual: residual,
        minus_one_columns,
        routing_conflict: verdict == Verdict::None && minus_one_columns >= 3,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PivotVerdict {
    pub pivot: (usize, usize),
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllPivotsReport {
    pub report: ClassificationReport,
    /// Pivots whose verdict differs from the one at `(0, 0)`.
    pub disagreements: Vec<PivotVerdict>,
}

/// [`classify`], cross-checked against the verdicts at all 36 pivots.
pub fn classify_all_pivots(m: &CHMatrix, tol: &Tolerances) -> Result<AllPivotsReport> {
    let report = classify(m, tol)?;
    let mut disagreements = Vec::new();
    for pr in 0..m.rows() {
        for pc in 0..m.cols() {
            let (_, a, b) = verdict_at(m, pr, pc, tol)?;
            let verdict = Verdict::from_patterns(a.is_some(), b.is_some());
            if verdict != report.verdict {
                disagreements.push(PivotVerdict {
                    pivot: (pr, pc),
                    verdict,
                });
            }
        }
    }
    Ok(AllPivotsReport {
        report,
        disagreements,
    })
}
