use jgate_core::{GateError, MatrixError, MoebiusError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid matrix: {0}")]
    Matrix(#[from] MatrixError),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
