use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A pipeline was asked to run outside the parameter range its rate analysis covers.
    #[error("parameter guard violated for {regime}: {condition}")]
    GuardViolation { regime: String, condition: String },

    #[error("no convergence after {iterations} iterations (last relative change {last_change:e})")]
    NonConvergence { iterations: usize, last_change: f64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn guard(regime: impl Into<String>, condition: impl Into<String>) -> Self {
        Error::GuardViolation {
            regime: regime.into(),
            condition: condition.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
