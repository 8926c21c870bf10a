use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Cartan type {family}{rank}")]
    UnsupportedType { family: String, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node {node} out of range for rank {rank} (nodes are 1..={rank})")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {weight} is not minuscule: {reason}")]
    NotMinuscule { weight: String, reason: String },

    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("chain length {k} out of range 0..={max}")]
    ChainLengthOutOfRange { k: usize, max: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CapExceeded { .. } => ErrorKind::Resource,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }
}
