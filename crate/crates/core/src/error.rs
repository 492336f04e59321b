use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structure was assembled with parameters that break one of its invariants.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The equivalence-constant search found no admissible `c`.
    #[error("no admissible constant: {0}")]
    NoAdmissibleConstant(String),

    #[error("witness does not violate {0}")]
    NotAViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
