use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("rank {rank} exceeds the Weyl group enumeration cap {cap}; use orbit-based operations instead")]
    RankCap { rank: usize, cap: usize },
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight function is not Weyl invariant at {0}")]
    NotInvariant(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("point is too close to a singular locus: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
