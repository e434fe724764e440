//! Construction, verification, classification and parameter recovery for
//! complex Hadamard matrices of order 6.
//!
//! The crate is organised around [`CHMatrix`], a small grid of unit-modulus
//! entries. Family constructors live in [`families`], the `-1` pattern
//! classifier in [`patterns`], the cancelling-row / H2-block analysis in
//! [`cancel`], parameter recovery in [`recover`], Haagerup brackets and
//! invariant fingerprints in [`haagerup`], and mutually unbiased basis audits
//! in [`mub`].
//!
//! Indices are zero-based throughout the API and in every JSON report.

pub mod cancel;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod haagerup;
pub mod json;
pub mod matrix;
pub mod mub;
pub mod patterns;
pub mod recover;
pub mod tolerance;
pub mod unimod;

pub use equivalence::{apply_equivalence, are_equivalent, dephase, EquivalenceMove};
pub use error::{HadError, Result};
pub use matrix::CHMatrix;
pub use tolerance::Tolerances;
pub use unimod::UnimodEntry;

pub use num_complex::Complex64;
