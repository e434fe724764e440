use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};

/// Numeric thresholds shared by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on |<r_i, r_j>| for orthogonality.
    pub eps_orth: f64,
    /// Bound on ||z|^2 - 1| for stored entries.
    pub eps_unimod: f64,
    /// Entrywise equality, including `-1` detection.
    pub eps_entry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_orth: 1e-9,
            eps_unimod: 1e-12,
            eps_entry: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(eps_orth: f64, eps_unimod: f64, eps_entry: f64) -> Result<Self> {
        let tol = Self {
            eps_orth,
            eps_unimod,
            eps_entry,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_orth, self.eps_unimod, self.eps_entry];
        if all.iter().any(|e| !e.is_finite() || *e <= 0.0) {
            return Err(HadError::InvalidTolerances(
                "all tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.eps_unimod > self.eps_entry {
            return Err(HadError::InvalidTolerances(
                "eps_unimod must not exceed eps_entry".into(),
            ));
        }
        if self.eps_entry > self.eps_orth * 10.0 {
            return Err(HadError::InvalidTolerances(
                "eps_entry must not exceed 10 * eps_orth".into(),
            ));
        }
        Ok(())
    }

    pub fn with_orth(mut self, eps_orth: f64) -> Result<Self> {
        self.eps_orth = eps_orth;
        self.validate().map(|_| self)
    }

    pub fn with_entry(mut self, eps_entry: f64) -> Result<Self> {
        self.eps_entry = eps_entry;
        self.validate().map(|_| self)
    }
}
