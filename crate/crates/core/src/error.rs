use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DaqcError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },

    #[error("{n_q} qubits exceeds the dense-operator cap of {cap}")]
    Resource { n_q: usize, cap: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(
        "infeasible coupling target: residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    Infeasible { residual: f64, tolerance: f64 },

    #[error("negative analog duration {duration:.6} requires allow-signed-times")]
    SignedTime { duration: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, DaqcError>;

impl DaqcError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        DaqcError::Validation(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        DaqcError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for DaqcError {
    fn from(e: serde_json::Error) -> Self {
        DaqcError::Serde(e.to_string())
    }
}

impl From<csv::Error> for DaqcError {
    fn from(e: csv::Error) -> Self {
        DaqcError::Serde(e.to_string())
    }
}
