use thiserror::Error;

/// Boxed error returned by objective implementations.
pub type BoxError = Box<dyn std::error::Error + Send + Sync + 'static>;

#[derive(Debug, Error)]
pub enum CfoError {
    #[error("invalid decision space: {0}")]
    InvalidSpace(String),

    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite fitness difference")]
    NonFiniteDifference,

    #[error("objective returned non-finite fitness {value} at step {step}, probe {probe}")]
    NonFiniteFitness { step: usize, probe: usize, value: f64 },

    #[error("objective failed at step {step}, probe {probe}: {source}")]
    Objective {
        step: usize,
        probe: usize,
        #[source]
        source: BoxError,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CfoError {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        CfoError::InvalidConfig { field, reason: reason.into() }
    }
}

pub type Result<T, E = CfoError> = std::result::Result<T, E>;
