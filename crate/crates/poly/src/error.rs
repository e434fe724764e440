use thiserror::Error;

pub type Result<T> = std::result::Result<T, PolyError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by a polynomial with {terms} terms; only nonzero monomials can divide")]
    NonMonomialDivisor { terms: usize },
    #[error("negative power of variable `{var}` needs a single-term substitute")]
    NonMonomialSubstitution { var: String },
    #[error("no value given for variable `{0}`")]
    MissingVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("entry ({row}, {col}) is not a single signed monomial")]
    NotMonomial { row: usize, col: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("repeated indices {0:?}")]
    IndexCollision(Vec<usize>),
    #[error("ragged symbolic matrix")]
    Ragged,
}
