use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime {0} divides a denominator or collapses the input")]
    BadPrime(u32),
    #[error("unsupported modulus {0}; supported primes are {list}", list = crate::scalars::SUPPORTED_PRIMES_TEXT)]
    UnsupportedPrime(u32),
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("form has rank {actual}, operation requires rank {required}")]
    RankError { required: usize, actual: usize },
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("a system needs between 1 and 15 generators, got {0}")]
    GeneratorCount(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("plane is not of general type: {0}")]
    NotGeneralType(String),
    #[error("plane is not of constant rank four")]
    NotCr4,
    #[error("form does not lie in the plane")]
    NotInPlane,
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("point-count signature matches no known orbit: {0}")]
    SignatureMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
