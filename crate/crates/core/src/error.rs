use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported form degree {0} (only degrees 1..=4 are supported)")]
    UnsupportedDegree(usize),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("operator R1 rejected: {failed} (violation {violation:.3e})")]
    InvalidR1 { failed: String, violation: f64 },

    #[error("Lie data rejected: {0}")]
    InvalidLieData(String),

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
