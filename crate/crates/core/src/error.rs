use thiserror::Error;

/// Largest ground-set size accepted anywhere in the crate.
pub const MAX_N: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An integer argument is outside the range the exact arithmetic supports.
    #[error("input out of range: {0}")]
    InputRange(String),

    /// The instance description itself is malformed.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// The blocks do not form a partition of [n].
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The two independent neighbour-sum computations disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
