use thiserror::Error;

pub type Result<T> = std::result::Result<T, HadError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HadError {
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unsupported shape {rows}x{cols}")]
    Shape { rows: usize, cols: usize },

    #[error("expected a square 6x6 matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("entry {value} is not unimodular (modulus {modulus})")]
    NotUnimodular { value: String, modulus: f64 },

    #[error("matrix is not Hadamard (max orthogonality residual {residual:e})")]
    NotHadamard { residual: f64 },

    #[error("matrix is not normalized (first row/column must be all ones)")]
    NotNormalized,

    #[error("rows {0} and {1} are not orthogonal")]
    NonOrthogonalRows(usize, usize),

    #[error("indices must be pairwise distinct: {0:?}")]
    IndexCollision(Vec<usize>),

    #[error("parameters violate the implicit equation (residual {residual:e})")]
    ImplicitViolation { residual: f64 },

    #[error("relation `{relation}` violated (residual {residual:e})")]
    RelationViolation { relation: String, residual: f64 },

    #[error("unknown relation `{0}`")]
    UnknownRelation(String),

    #[error("relation `{relation}` takes {expected} parameters, got {got}")]
    RelationArity {
        relation: String,
        expected: usize,
        got: usize,
    },

    #[error("required -1 pattern missing: {0}")]
    PatternMissing(String),

    #[error("parameter recovery failed: {0}")]
    RecoveryFailed(String),

    #[error("bases are not mutually unbiased (max |T_ij| deviation {deviation:e})")]
    NotUnbiased { deviation: f64 },

    #[error("basis is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("invalid equivalence move: {0}")]
    InvalidMove(String),

    #[error("sampler gave up after {attempts} attempts")]
    SamplerExhausted { attempts: usize },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl HadError {
    /// True for errors caused by unreadable input rather than by the
    /// mathematics (used for exit codes).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            HadError::Parse(_) | HadError::Shape { .. } | HadError::InvalidTolerances(_)
        )
    }
}
