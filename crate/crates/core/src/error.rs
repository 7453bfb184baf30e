use thiserror::Error;

/// Errors raised by the laboratory's algebra and checkers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("no irreducible polynomial of degree {degree} found")]
    NoIrreducibleFound { degree: usize },
    #[error("size guard exceeded for {what}: {count} > {limit}")]
    SizeGuardExceeded {
        what: String,
        count: u128,
        limit: u128,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field tower")]
    TowerMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotASubspace,
    #[error("embedded basis is not F_q-linearly independent")]
    DependentEmbedding,
    #[error("degenerate linear system: {0}")]
    DegenerateSystem(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
    #[error("partition guard exceeded: ell = {ell} > {limit}")]
    PartitionGuardExceeded { ell: usize, limit: usize },
    #[error("kernel pattern is not generic")]
    NotGkp,
    #[error("direct-sum failure: {0}")]
    DirectSumFailure(String),
    #[error("M_S specification invariant violated: {0}")]
    SpecInvariantViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
