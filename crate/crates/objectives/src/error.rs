use std::time::Duration;

use cfo_antenna::AntennaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObjectiveError {
    #[error("unknown objective `{0}`")]
    UnknownId(String),

    #[error("{id} expects {expected} coordinates, got {got}")]
    Dimension { id: &'static str, expected: usize, got: usize },

    #[error("invalid option `{name}`: {reason}")]
    InvalidOption { name: &'static str, reason: String },

    #[error("PBM_4 needs a full-wave solver; connect one through the external objective protocol")]
    NeedsExternalSolver,

    #[error(transparent)]
    Antenna(#[from] AntennaError),

    #[error(transparent)]
    External(#[from] ExternalError),
}

/// Failures of an out-of-process evaluator. `stderr` holds whatever the child
/// wrote to its error stream up to the failure.
#[derive(Debug, Error)]
pub enum ExternalError {
    #[error("failed to start `{command}`: {source}")]
    Spawn {
        command: String,
        #[source]
        source: std::io::Error,
    },

    #[error("bad handshake {line:?}, expected \"CFO-OBJ 1\"; stderr: {stderr}")]
    Handshake { line: String, stderr: String },

    #[error("malformed reply {line:?}; stderr: {stderr}")]
    Malformed { line: String, stderr: String },

    #[error("evaluator reported error: {0}")]
    Remote(String),

    #[error("no reply within {timeout:?}; evaluator killed; stderr: {stderr}")]
    Timeout { timeout: Duration, stderr: String },

    #[error("evaluator exited ({status}); stderr: {stderr}")]
    Exited { status: String, stderr: String },

    #[error("pipe error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = ObjectiveError> = std::result::Result<T, E>;
