use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("point index {index} out of range for a space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("not a metric: {0}")]
    NotMetric(String),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map is not distance-decreasing: {0}")]
    NotLipschitz(String),
    #[error("space is not aligned: {0}")]
    NotAligned(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not exactly representable: {0}")]
    NotRepresentable(String),
    #[error("chain basis for degree {degree} exceeds the cap of {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
