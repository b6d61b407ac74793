use thiserror::Error;

/// Failure modes shared across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("truncation dimension {requested} exceeds cap {cap}")]
    DimensionCap { requested: usize, cap: usize },

    #[error("truncation did not converge below {tolerance:e} before cap {cap} (last change {last_change:e})")]
    NonConvergent { tolerance: f64, cap: usize, last_change: f64 },

    #[error("target {target} is not achievable: {reason}")]
    Unachievable { target: f64, reason: String },

    #[error("singular point: {0}")]
    Singular(String),

    #[error("frequency {frequency:e} is not an integer multiple of base {base:e}")]
    Incommensurate { frequency: f64, base: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
