use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size n={n}: {}", size_bound(*max))]
    InvalidSize { n: usize, max: usize },

    #[error("dimension mismatch: expected n={expected}, got n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a permutation of [{n}]: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("index {index} out of range for n={n}")]
    OutOfRange { index: usize, n: usize },

    #[error("invalid pair ({first},{second}): entries must be distinct")]
    DegeneratePair { first: usize, second: usize },

    #[error("permutation {0} is not a member of the set")]
    NotAMember(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    Resource(String),
}

fn size_bound(max: usize) -> String {
    if max == usize::MAX {
        "must satisfy n >= 2".into()
    } else {
        format!("must satisfy 2 <= n <= {max}")
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
