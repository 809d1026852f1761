//! JSON input documents.
//!
//! Complex numbers are `[re, im]` arrays and matrices are four complex entries
//! in row-major order, so `[[1, 0], [1, 0], [0, 0], [1, 0]]` is the
//! translation `z ↦ z + 1`.

use jgate_core::{ComplexScalar, UnimodularMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type ComplexPair = [f64; 2];
pub type MatrixEntries = [ComplexPair; 4];

/// Name of the environment variable overriding the unimodularity tolerance.
pub const TOLERANCE_ENV: &str = "JGATE_TOLERANCE";

pub fn to_complex(pair: ComplexPair) -> ComplexScalar {
    ComplexScalar::new(pair[0], pair[1])
}

pub fn to_pair(z: ComplexScalar) -> ComplexPair {
    [z.re, z.im]
}

pub fn matrix_to_entries(m: &UnimodularMatrix) -> MatrixEntries {
    m.entries().map(to_pair)
}

pub fn entries_to_matrix(entries: &MatrixEntries, tolerance: f64) -> Result<UnimodularMatrix, CliError> {
    let [a, b, c, d] = entries.map(to_complex);
    Ok(UnimodularMatrix::with_tolerance(a, b, c, d, tolerance)?)
}

/// The first generator: either its diagonal entry `λ` or a raw matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Lambda { lambda: ComplexPair },
    Matrix(MatrixEntries),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        self.tolerance.is_none() && self.steps.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub g: GeneratorSpec,
    pub h: MatrixEntries,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

/// A single matrix, bare or wrapped as `{"matrix": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDocument {
    Bare(MatrixEntries),
    Wrapped { matrix: MatrixEntries },
}

impl MatrixDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn entries(&self) -> &MatrixEntries {
        match self {
            MatrixDocument::Bare(e) | MatrixDocument::Wrapped { matrix: e } => e,
        }
    }
}

/// Document option, then `JGATE_TOLERANCE`, then the library default.
pub fn resolve_tolerance(option: Option<f64>, env: Option<&str>) -> Result<f64, CliError> {
    let value = match (option, env) {
        (Some(t), _) => t,
        (None, Some(raw)) => raw
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::InvalidTolerance(raw.to_string()))?,
        (None, None) => jgate_core::mat2c::UNIMODULAR_TOLERANCE,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::InvalidTolerance(value.to_string()))
    }
}

pub fn env_tolerance() -> Option<String> {
    std::env::var(TOLERANCE_ENV).ok()
}
