//! JSON schema shared by matrices and bases.
//!
//! ```json
//! {"rows": 6, "cols": 6, "entries": [[{"re": 1.0, "im": 0.0}, {"phase_turns": 0.25}, ...], ...]}
//! ```
//!
//! Entries may mix the rectangular and the phase form. Output always uses
//! the rectangular form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HadError, Result};
use crate::matrix::CHMatrix;
use crate::unimod::UnimodEntry;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum EntryJson {
    Rect { re: f64, im: f64 },
    Phase { phase_turns: f64 },
}

impl EntryJson {
    pub fn to_complex(self) -> Complex64 {
        match self {
            EntryJson::Rect { re, im } => Complex64::new(re, im),
            EntryJson::Phase { phase_turns } => UnimodEntry::from_turns(phase_turns).value(),
        }
    }

    pub fn to_unimod(self) -> Result<UnimodEntry> {
        match self {
            EntryJson::Rect { re, im } => UnimodEntry::new(Complex64::new(re, im)),
            EntryJson::Phase { phase_turns } => {
                if phase_turns.is_finite() {
                    Ok(UnimodEntry::from_turns(phase_turns))
                } else {
                    Err(HadError::Parse("phase_turns must be finite".into()))
                }
            }
        }
    }
}

impl From<Complex64> for EntryJson {
    fn from(z: Complex64) -> Self {
        EntryJson::Rect { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<EntryJson>>,
}

impl MatrixJson {
    fn check_grid(&self) -> Result<()> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(HadError::Parse(format!(
                "declared {}x{} but entries grid does not match",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn to_complex_grid(&self) -> Result<Vec<Vec<Complex64>>> {
        self.check_grid()?;
        Ok(self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_complex()).collect())
            .collect())
    }

    pub fn from_complex_grid(grid: &[Vec<Complex64>]) -> Self {
        Self {
            rows: grid.len(),
            cols: grid.first().map_or(0, Vec::len),
            entries: grid
                .iter()
                .map(|r| r.iter().map(|&z| z.into()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CHMatrix {
    type Error = HadError;
    fn try_from(m: MatrixJson) -> Result<Self> {
        m.check_grid()?;
        let entries = m
            .entries
            .iter()
            .flatten()
            .map(|e| e.to_unimod())
            .collect::<Result<Vec<_>>>()?;
        CHMatrix::new(m.rows, m.cols, entries)
    }
}

impl From<CHMatrix> for MatrixJson {
    fn from(m: CHMatrix) -> Self {
        MatrixJson::from_complex_grid(&m.to_complex_rows())
    }
}

pub fn matrix_from_json(text: &str) -> Result<CHMatrix> {
    serde_json::from_str(text).map_err(|e| HadError::Parse(e.to_string()))
}

pub fn matrix_to_json(m: &CHMatrix) -> String {
    serde_json::to_string(m).expect("matrix serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_entry_forms() {
        let row = r#"[{"re":1,"im":0},{"phase_turns":0.5},{"phase_turns":0.25},{"re":0,"im":-1},{"re":1,"im":0},{"re":-1,"im":0}]"#;
        let text = format!(r#"{{"rows":2,"cols":6,"entries":[{row},{row}]}}"#);
        let m = matrix_from_json(&text).unwrap();
        assert_eq!(m.get(0, 1), UnimodEntry::MINUS_ONE);
        assert_eq!(m.get(1, 2), UnimodEntry::I);
        let back = matrix_from_json(&matrix_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn declared_shape_must_match() {
        let text = r#"{"rows":2,"cols":6,"entries":[[{"re":1,"im":0}]]}"#;
        assert!(matches!(matrix_from_json(text), Err(HadError::Parse(_))));
        assert!(matrix_from_json("notes").is_err());
    }

    #[test]
    fn non_unimodular_entry_rejected() {
        let row = r#"[{"re":2,"im":0},{"re":1,"im":0},{"re":1,"im":0},{"re":1,"im":0},{"re":1,"im":0},{"re":1,"im":0}]"#;
        let text = format!(r#"{{"rows":2,"cols":6,"entries":[{row},{row}]}}"#);
        assert!(matrix_from_json(&text).is_err());
    }
}
