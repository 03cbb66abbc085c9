use thiserror::Error;

/// Errors raised by the bracket flow library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid decomposition: q + n must be at least 1")]
    EmptyDecomposition,

    #[error("index {index} out of range for algebra of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("singular linear map (smallest singular value {sigma_min:e})")]
    SingularMap { sigma_min: f64 },

    #[error("rescaling factor must be nonzero")]
    ZeroRescale,

    #[error("bracket is not a valid homogeneous space: {0}")]
    Membership(String),

    #[error("Killing form restricted to k is not negative definite (largest eigenvalue {largest:e})")]
    IsotropyNotCompact { largest: f64 },

    #[error("normalization precondition failed: {0}")]
    Normalization(String),

    #[error("closed form unavailable: {0}")]
    ClosedForm(String),

    #[error("metric lost positive definiteness at t = {t}")]
    NotPositiveDefinite { t: f64 },

    #[error("soliton certificate rejected: residual {residual:e} above threshold {threshold:e}")]
    NotCertified { residual: f64, threshold: f64 },

    #[error("linear map is not skew-symmetric (|A + A^t| = {0:e})")]
    NotSkew(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("malformed bracket file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
