use std::path::PathBuf;

use cfo_core::CfoError;
use cfo_objectives::ObjectiveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),

    #[error("objective error: {0}")]
    Objective(#[from] ObjectiveError),

    #[error(transparent)]
    Run(#[from] CfoError),

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Verify(String),
}

impl BenchError {
    pub fn config(msg: impl Into<String>) -> Self {
        BenchError::Config(msg.into())
    }

    /// 2 for configuration problems, 3 for objective or protocol failures,
    /// 4 for internal invariant violations, 1 for failed verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            BenchError::Config(_) | BenchError::Output { .. } => 2,
            BenchError::Objective(_) => 3,
            BenchError::Run(e) => match e {
                CfoError::InvalidSpace(_) | CfoError::InvalidConfig { .. } | CfoError::Dimension(_) => 2,
                CfoError::Objective { .. } | CfoError::NonFiniteFitness { .. } => 3,
                CfoError::NonFiniteDifference | CfoError::Invariant(_) => 4,
            },
            BenchError::Verify(_) => 1,
        }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
