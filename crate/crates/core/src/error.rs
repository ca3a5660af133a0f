use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is not centro-symmetric")]
    NotCentroSymmetric,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("permutation does not commute with the flip i -> 2r+2-i")]
    NotSignedPermutation,
    #[error("misuse: {0}")]
    Misuse(String),
    #[error("triangularity violated: {0}")]
    Triangularity(String),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
