//! Cancelling row pairs, regularity, block decompositions into 2x2
//! Hadamard blocks, and location of the Dita family parameter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equivalence::{are_equivalent, EquivalenceMove};
use crate::error::{HadError, Result};
use crate::families::d6;
use crate::haagerup::{grid_key, quartic_products};
use crate::matrix::CHMatrix;
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

fn ratios(m: &CHMatrix, i: usize, j: usize) -> Vec<Complex64> {
    m.row(i)
        .iter()
        .zip(m.row(j))
        .map(|(x, y)| (*x / *y).value())
        .collect()
}

fn require_orthogonal(m: &CHMatrix, i: usize, j: usize, tol: &Tolerances) -> Result<()> {
    if m.inner_product_rows(i, j)?.norm() > tol.eps_orth {
        return Err(HadError::NonOrthogonalRows(i, j));
    }
    Ok(())
}

/// Whether two orthogonal rows cancel: the first entry ratio
/// `M[i][0] / M[j][0]` is annihilated by some other ratio.
pub fn is_cancelling_pair(m: &CHMatrix, i: usize, j: usize, tol: &Tolerances) -> Result<bool> {
    require_orthogonal(m, i, j, tol)?;
    let r = ratios(m, i, j);
    Ok(r[1..].iter().any(|q| (r[0] + q).norm() <= tol.eps_entry))
}

/// The 15 perfect matchings of six points, each listed with sorted pairs.
pub fn pairings() -> Vec<[[usize; 2]; 3]> {
    let mut out = Vec::with_capacity(15);
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
        for b in 1..4 {
            let (p, q) = (rest[0], rest[b]);
            let tail: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != q).collect();
            out.push([[0, a], [p, q], [tail[0], tail[1]]]);
        }
    }
    out
}

/// A split of the six entry ratios of two rows into three pairs summing to
/// zero, if one exists.
pub fn cancelling_partition(
    m: &CHMatrix,
    i: usize,
    j: usize,
    tol: &Tolerances,
) -> Result<Option<[[usize; 2]; 3]>> {
    require_orthogonal(m, i, j, tol)?;
    let r = ratios(m, i, j);
    Ok(pairings()
        .into_iter()
        .find(|p| p.iter().all(|[x, y]| (r[*x] + r[*y]).norm() <= tol.eps_entry)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFlag {
    pub rows: (usize, usize),
    pub cancelling: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellingSummary {
    pub pairs: Vec<PairFlag>,
    pub regular: bool,
    pub triangle: Option<[usize; 3]>,
    /// A triangle of pairwise cancelling rows forces membership in the Dita
    /// family up to equivalence.
    pub dita_member: bool,
}

pub fn cancelling_summary(m: &CHMatrix, tol: &Tolerances) -> Result<CancellingSummary> {
    m.require_hadamard(tol)?;
    let n = m.rows();
    let mut adj = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = is_cancelling_pair(m, i, j, tol)?;
            adj[i][j] = c;
            adj[j][i] = c;
            pairs.push(PairFlag {
                rows: (i, j),
                cancelling: c,
            });
        }
    }
    let mut triangle = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adj[i][j] && adj[j][k] && adj[i][k] {
                    triangle = Some([i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    Ok(CancellingSummary {
        regular: pairs.iter().all(|p| p.cancelling),
        dita_member: triangle.is_some(),
        pairs,
        triangle,
    })
}

/// Row and column pairings under which all nine 2x2 blocks are Hadamard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPairing {
    pub row_pairs: [[usize; 2]; 3],
    pub col_pairs: [[usize; 2]; 3],
}

fn block_is_hadamard(m: &CHMatrix, r: [usize; 2], c: [usize; 2], eps: f64) -> bool {
    let q = |i, j| m.get(i, j);
    ((q(r[0], c[0]) / q(r[1], c[0])).value() + (q(r[0], c[1]) / q(r[1], c[1])).value()).norm() <= eps
}

/// First pairing, in the canonical order of [`pairings`], that splits the
/// matrix into nine 2x2 Hadamard blocks.
pub fn karlsson_blocks(m: &CHMatrix, tol: &Tolerances) -> Result<Option<BlockPairing>> {
    m.require_hadamard(tol)?;
    let idx = |a: usize, b: usize| a * 6 + b;
    let mut table = vec![false; 36 * 36];
    for r0 in 0..6 {
        for r1 in r0 + 1..6 {
            for c0 in 0..6 {
                for c1 in c0 + 1..6 {
                    table[idx(r0, r1) * 36 + idx(c0, c1)] =
                        block_is_hadamard(m, [r0, r1], [c0, c1], tol.eps_entry);
                }
            }
        }
    }
    let all = pairings();
    for rp in &all {
        for cp in &all {
            if rp
                .iter()
                .all(|r| cp.iter().all(|c| table[idx(r[0], r[1]) * 36 + idx(c[0], c[1])]))
            {
                return Ok(Some(BlockPairing {
                    row_pairs: *rp,
                    col_pairs: *cp,
                }));
            }
        }
    }
    Ok(None)
}

/// Checks that every block of `p` is a 2x2 Hadamard matrix.
pub fn verify_block_pairing(m: &CHMatrix, p: &BlockPairing, eps: f64) -> bool {
    p.row_pairs
        .iter()
        .all(|r| p.col_pairs.iter().all(|c| block_is_hadamard(m, *r, *c, eps)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DitaLocation {
    pub c: UnimodEntry,
    /// Move taking the input to `d6(c)`.
    pub certificate: EquivalenceMove,
}

/// Finds `c` with the input equivalent to `d6(c)`.
///
/// The product `M[1][4] M[0][0] / (M[1][0] M[0][4])` of `d6(c)` equals
/// `-ic`, and quartic products are equivalence invariants, so every
/// candidate is `i v` for a quartic product `v` of the input. Candidates
/// whose own quartic products are not all present in the input are
/// discarded before the equivalence search.
pub fn locate_dita(m: &CHMatrix, tol: &Tolerances) -> Result<Option<DitaLocation>> {
    m.require_hadamard(tol)?;
    let values = quartic_products(m);
    let keys: std::collections::HashSet<(i64, i64)> = values.iter().map(|z| grid_key(*z, 1e-6)).collect();
    let present = |z: Complex64| {
        let (a, b) = grid_key(z, 1e-6);
        (-1..=1).any(|da| (-1..=1).any(|db| keys.contains(&(a + da, b + db))))
    };
    let mut tried: Vec<UnimodEntry> = Vec::new();
    for v in values {
        let c = UnimodEntry::renormalize(Complex64::i() * v);
        if tried.iter().any(|t| t.is_close(c, 1e-7)) {
            continue;
        }
        tried.push(c);
        let cand = d6(c);
        if !quartic_products(&cand).into_iter().all(present) {
            continue;
        }
        if let Some(certificate) = are_equivalent(m, &cand, tol)? {
            return Ok(Some(DitaLocation { c, certificate }));
        }
    }
    Ok(None)
}
