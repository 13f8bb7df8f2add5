use thiserror::Error;

/// Errors raised by the algebraic layers of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("ring context mismatch: G({0},{1}) vs G({2},{3})", left.0, left.1, right.0, right.1)]
    ContextMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid ring context: k={k}, n={n} (both must be at least 1)")]
    InvalidContext { k: usize, n: usize },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a partition: {0:?} is not weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("partition {partition:?} does not fit in the {k}x{n} box")]
    PartitionOutsideBox {
        partition: Vec<u32>,
        k: usize,
        n: usize,
    },

    #[error("partition {partition:?} has more than {k} parts")]
    PartitionTooWide { partition: Vec<u32>, k: usize },

    #[error("theorem hypothesis violated for (k, n) = ({k}, {n}): {reason}")]
    HypothesisViolation { k: usize, n: usize, reason: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("(k, n) = ({k}, {n}) dispatches to {actual}, not {expected}")]
    DispatchMismatch {
        k: usize,
        n: usize,
        expected: String,
        actual: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
