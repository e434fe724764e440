//! Row/column permutations and unimodular scalings, dephasing, and an
//! exhaustive equivalence test.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::matrix::CHMatrix;
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

/// `out[i][j] = row_phases[i] * col_phases[j] * M[row_perm^-1(i)][col_perm^-1(j)]`.
///
/// `row_perm[k]` is the position that old row `k` moves to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceMove {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_phases: Vec<UnimodEntry>,
    pub col_phases: Vec<UnimodEntry>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&k| k < p.len() && !std::mem::replace(&mut seen[k], true))
}

pub(crate) fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

fn swap_perm(n: usize, a: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(0, a);
    p
}

impl EquivalenceMove {
    pub fn new(
        row_perm: Vec<usize>,
        col_perm: Vec<usize>,
        row_phases: Vec<UnimodEntry>,
        col_phases: Vec<UnimodEntry>,
    ) -> Result<Self> {
        let mv = Self {
            row_perm,
            col_perm,
            row_phases,
            col_phases,
        };
        mv.validate()?;
        Ok(mv)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_permutation(&self.row_perm) || !is_permutation(&self.col_perm) {
            return Err(HadError::InvalidMove("permutations must be bijections".into()));
        }
        if self.row_phases.len() != self.row_perm.len() || self.col_phases.len() != self.col_perm.len()
        {
            return Err(HadError::InvalidMove("phase vector length mismatch".into()));
        }
        Ok(())
    }

    pub fn identity(rows: usize, cols: usize) -> Self {
        Self {
            row_perm: (0..rows).collect(),
            col_perm: (0..cols).collect(),
            row_phases: vec![UnimodEntry::ONE; rows],
            col_phases: vec![UnimodEntry::ONE; cols],
        }
    }

    /// Pure permutation move.
    pub fn permutation(row_perm: Vec<usize>, col_perm: Vec<usize>) -> Result<Self> {
        let (r, c) = (row_perm.len(), col_perm.len());
        Self::new(
            row_perm,
            col_perm,
            vec![UnimodEntry::ONE; r],
            vec![UnimodEntry::ONE; c],
        )
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Self {
        let mut row_perm: Vec<usize> = (0..rows).collect();
        let mut col_perm: Vec<usize> = (0..cols).collect();
        row_perm.shuffle(rng);
        col_perm.shuffle(rng);
        Self {
            row_perm,
            col_perm,
            row_phases: (0..rows).map(|_| UnimodEntry::random(rng)).collect(),
            col_phases: (0..cols).map(|_| UnimodEntry::random(rng)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            row_perm: invert(&self.row_perm),
            col_perm: invert(&self.col_perm),
            row_phases: self.row_perm.iter().map(|&p| self.row_phases[p].conj()).collect(),
            col_phases: self.col_perm.iter().map(|&p| self.col_phases[p].conj()).collect(),
        }
    }

    /// The move equivalent to applying `self` first and `next` second.
    pub fn then(&self, next: &Self) -> Self {
        let next_row_inv = invert(&next.row_perm);
        let next_col_inv = invert(&next.col_perm);
        Self {
            row_perm: self.row_perm.iter().map(|&p| next.row_perm[p]).collect(),
            col_perm: self.col_perm.iter().map(|&p| next.col_perm[p]).collect(),
            row_phases: (0..self.row_perm.len())
                .map(|i| next.row_phases[i] * self.row_phases[next_row_inv[i]])
                .collect(),
            col_phases: (0..self.col_perm.len())
                .map(|j| next.col_phases[j] * self.col_phases[next_col_inv[j]])
                .collect(),
        }
    }

    pub fn apply(&self, m: &CHMatrix) -> Result<CHMatrix> {
        apply_equivalence(m, self)
    }
}

pub fn apply_equivalence(m: &CHMatrix, mv: &EquivalenceMove) -> Result<CHMatrix> {
    mv.validate()?;
    if mv.row_perm.len() != m.rows() || mv.col_perm.len() != m.cols() {
        return Err(HadError::InvalidMove(format!(
            "move is {}x{} but matrix is {}x{}",
            mv.row_perm.len(),
            mv.col_perm.len(),
            m.rows(),
            m.cols()
        )));
    }
    let ri = invert(&mv.row_perm);
    let ci = invert(&mv.col_perm);
    CHMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        mv.row_phases[i] * mv.col_phases[j] * m.get(ri[i], ci[j])
    })
}

/// Dephases `m` around the given pivot and returns the move that does it.
///
/// The pivot row and column are swapped into position 0, each row is scaled
/// so column 0 becomes all ones, then each column so row 0 does.
pub fn dephase_with_move(
    m: &CHMatrix,
    pivot_row: usize,
    pivot_col: usize,
) -> Result<(CHMatrix, EquivalenceMove)> {
    m.check_row(pivot_row)?;
    m.check_col(pivot_col)?;
    let row_perm = swap_perm(m.rows(), pivot_row);
    let col_perm = swap_perm(m.cols(), pivot_col);
    // Swaps are involutions, so position i holds old row row_perm[i].
    let x = |i: usize, j: usize| m.get(row_perm[i], col_perm[j]);
    let corner = x(0, 0);
    let row_phases: Vec<_> = (0..m.rows()).map(|i| x(i, 0).conj()).collect();
    let col_phases: Vec<_> = (0..m.cols()).map(|j| corner * x(0, j).conj()).collect();
    let mv = EquivalenceMove {
        row_perm,
        col_perm,
        row_phases,
        col_phases,
    };
    let mut out = apply_equivalence(m, &mv)?;
    out = CHMatrix::from_fn(out.rows(), out.cols(), |i, j| {
        if i == 0 || j == 0 {
            UnimodEntry::ONE
        } else {
            out.get(i, j)
        }
    })?;
    Ok((out, mv))
}

pub fn dephase(m: &CHMatrix, pivot_row: usize, pivot_col: usize) -> Result<CHMatrix> {
    dephase_with_move(m, pivot_row, pivot_col).map(|(d, _)| d)
}

impl CHMatrix {
    pub fn dephase(&self, pivot_row: usize, pivot_col: usize) -> Result<CHMatrix> {
        dephase(self, pivot_row, pivot_col)
    }
}

/// Multiset equality within `eps` (small sizes, exact backtracking match).
pub(crate) fn multiset_close(x: &[UnimodEntry], y: &[UnimodEntry], eps: f64) -> bool {
    fn go(x: &[UnimodEntry], y: &[UnimodEntry], used: &mut [bool], eps: f64) -> bool {
        let Some((&first, rest)) = x.split_first() else {
            return true;
        };
        for k in 0..y.len() {
            if !used[k] && first.is_close(y[k], eps) {
                used[k] = true;
                if go(rest, y, used, eps) {
                    return true;
                }
                used[k] = false;
            }
        }
        false
    }
    x.len() == y.len() && go(x, y, &mut vec![false; y.len()], eps)
}

/// Searches for a move taking `a` to `b`.
///
/// The search covers every pivot of `a` (36 choices) and every assignment of
/// the remaining rows, pruned by comparing row value multisets of the
/// dephased forms. Once rows are fixed, columns of a Hadamard matrix are
/// pairwise distinct, so each column has at most one partner. Together this
/// enumerates all 6!x6! permutation pairs. Returns a witness with
/// `apply_equivalence(a, &w) ~= b`.
pub fn are_equivalent(
    a: &CHMatrix,
    b: &CHMatrix,
    tol: &Tolerances,
) -> Result<Option<EquivalenceMove>> {
    a.require_hadamard(tol)?;
    b.require_hadamard(tol)?;
    let n = a.rows();
    let eps = tol.eps_orth;
    let (b_norm, b_move) = dephase_with_move(b, 0, 0)?;
    let b_back = b_move.inverse();

    for pr in 0..n {
        for pc in 0..n {
            let (a_norm, a_move) = dephase_with_move(a, pr, pc)?;
            let candidates: Vec<Vec<usize>> = (1..n)
                .map(|i| {
                    (1..n)
                        .filter(|&k| multiset_close(b_norm.row(i), a_norm.row(k), eps))
                        .collect()
                })
                .collect();
            if candidates.iter().any(Vec::is_empty) {
                continue;
            }
            let mut assign = vec![0usize; n];
            let mut used = vec![false; n];
            if let Some(perm) =
                assign_rows(&a_norm, &b_norm, &candidates, 1, &mut assign, &mut used, eps)
            {
                let witness = a_move.then(&perm).then(&b_back);
                let image = apply_equivalence(a, &witness)?;
                if image.approx_eq(b, eps * 10.0) {
                    return Ok(Some(witness));
                }
            }
        }
    }
    Ok(None)
}

/// Backtracks over row assignments `b row i <- a row assign[i]`; at a full
/// assignment tries to match columns.
fn assign_rows(
    a: &CHMatrix,
    b: &CHMatrix,
    candidates: &[Vec<usize>],
    i: usize,
    assign: &mut [usize],
    used: &mut [bool],
    eps: f64,
) -> Option<EquivalenceMove> {
    let n = a.rows();
    if i == n {
        return match_columns(a, b, assign, eps);
    }
    for &k in &candidates[i - 1] {
        if used[k] {
            continue;
        }
        used[k] = true;
        assign[i] = k;
        let found = assign_rows(a, b, candidates, i + 1, assign, used, eps);
        used[k] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

fn match_columns(a: &CHMatrix, b: &CHMatrix, assign: &[usize], eps: f64) -> Option<EquivalenceMove> {
    let n = a.cols();
    let mut col_of = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;
    for j in 1..n {
        let l = (1..n).find(|&l| {
            !used[l] && (1..a.rows()).all(|i| a.get(assign[i], l).is_close(b.get(i, j), eps))
        })?;
        used[l] = true;
        col_of[j] = l;
    }
    // assign / col_of map new position -> old index; moves store old -> new.
    let row_perm = invert(assign);
    let col_perm = invert(&col_of);
    EquivalenceMove::permutation(row_perm, col_perm).ok()
}
