//! Mutually unbiased bases of `C^6` and audits of basis triplets.
//!
//! Bases are general unitary matrices (columns are the basis vectors), so
//! they are held in a plain complex grid rather than a [`CHMatrix`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::json::MatrixJson;
use crate::matrix::{CHMatrix, ORDER};
use crate::patterns::{classify, ClassificationReport, Verdict};
use crate::tolerance::Tolerances;
use crate::unimod::UnimodEntry;

/// Largest `|(B* B - I)_ij|` accepted for a basis.
pub const UNITARY_EPS: f64 = 1e-9;

/// Largest `||T_ij| - 1|` accepted when normalizing a transition matrix.
pub const TRANSITION_SLACK: f64 = 1e-6;

type Grid = [[Complex64; ORDER]; ORDER];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Basis {
    m: Grid,
    unitarity_residual: f64,
}

fn adjoint_product(e: &Grid, f: &Grid) -> Grid {
    let mut out = [[Complex64::new(0.0, 0.0); ORDER]; ORDER];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..ORDER).map(|k| e[k][i].conj() * f[k][j]).sum();
        }
    }
    out
}

impl Basis {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if rows.len() != ORDER || rows.iter().any(|r| r.len() != ORDER) {
            return Err(HadError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        let mut m = [[Complex64::new(0.0, 0.0); ORDER]; ORDER];
        for (i, r) in rows.iter().enumerate() {
            m[i].copy_from_slice(r);
        }
        let g = adjoint_product(&m, &m);
        let mut residual = 0.0f64;
        for (i, row) in g.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((z - target).norm());
            }
        }
        if !residual.is_finite() || residual > UNITARY_EPS {
            return Err(HadError::NotUnitary { residual });
        }
        Ok(Self {
            m,
            unitarity_residual: residual,
        })
    }

    pub fn identity() -> Self {
        let rows = (0..ORDER)
            .map(|i| {
                (0..ORDER)
                    .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self::new(rows).expect("identity is unitary")
    }

    /// `H / sqrt(6)` for a Hadamard matrix `H`.
    pub fn from_hadamard(h: &CHMatrix) -> Result<Self> {
        let s = (ORDER as f64).sqrt();
        Self::new(
            h.to_complex_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| z / s).collect())
                .collect(),
        )
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.unitarity_residual
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }
}

impl TryFrom<MatrixJson> for Basis {
    type Error = HadError;
    fn try_from(j: MatrixJson) -> Result<Self> {
        Basis::new(j.to_complex_grid()?)
    }
}

impl From<Basis> for MatrixJson {
    fn from(b: Basis) -> Self {
        MatrixJson::from_complex_grid(&b.to_rows())
    }
}

pub fn basis_from_json(text: &str) -> Result<Basis> {
    let j: MatrixJson = serde_json::from_str(text).map_err(|e| HadError::Parse(e.to_string()))?;
    Basis::try_from(j)
}

/// `sqrt(6) E* F`, which is a complex Hadamard matrix when the bases are
/// unbiased.
pub fn transition(e: &Basis, f: &Basis) -> Result<CHMatrix> {
    let s = (ORDER as f64).sqrt();
    let g = adjoint_product(&e.m, &f.m);
    let deviation = g
        .iter()
        .flatten()
        .map(|z| ((z * s).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation > TRANSITION_SLACK {
        return Err(HadError::NotUnbiased { deviation });
    }
    let entries = g
        .iter()
        .flatten()
        .map(|z| UnimodEntry::new(z * s))
        .collect::<Result<Vec<_>>>()?;
    CHMatrix::new(ORDER, ORDER, entries)
}

/// `(max |<e_i, f_j>|^2 - 1/6| <= eps_orth, that maximum)`.
pub fn is_unbiased_pair(e: &Basis, f: &Basis, tol: &Tolerances) -> (bool, f64) {
    let g = adjoint_product(&e.m, &f.m);
    let dev = g
        .iter()
        .flatten()
        .map(|z| (z.norm_sqr() - 1.0 / ORDER as f64).abs())
        .fold(0.0, f64::max);
    (dev <= tol.eps_orth, dev)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairAudit {
    pub pair: (usize, usize),
    pub unbiased: bool,
    pub deviation: f64,
    pub transition: Option<CHMatrix>,
    pub classification: Option<ClassificationReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MubAuditReport {
    pub pairs: Vec<PairAudit>,
    /// Every transition matrix lies in one of the two families. A necessary
    /// condition only; triplets are not compared up to equivalence.
    pub zauner_compatible: bool,
}

fn audit_pair(x: &Basis, y: &Basis, pair: (usize, usize), tol: &Tolerances) -> PairAudit {
    let (unbiased, deviation) = is_unbiased_pair(x, y, tol);
    let mut audit = PairAudit {
        pair,
        unbiased,
        deviation,
        transition: None,
        classification: None,
        error: None,
    };
    match transition(x, y).and_then(|t| classify(&t, tol).map(|c| (t, c))) {
        Ok((t, c)) => {
            audit.transition = Some(t);
            audit.classification = Some(c);
        }
        Err(e) => audit.error = Some(e.to_string()),
    }
    audit
}

pub fn audit_triplet(b: [&Basis; 3], tol: &Tolerances) -> MubAuditReport {
    let pairs: Vec<PairAudit> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| audit_pair(b[i], b[j], (i, j), tol))
        .collect();
    let zauner_compatible = pairs.iter().all(|p| {
        p.unbiased
            && p.classification
                .as_ref()
                .is_some_and(|c| c.verdict != Verdict::None)
    });
    MubAuditReport {
        pairs,
        zauner_compatible,
    }
}
