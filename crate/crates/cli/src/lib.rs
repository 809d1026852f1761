//! Command-line front end for the discreteness gates: JSON documents in,
//! JSON or text reports out, plus a seeded CSV sampling sweep.

pub mod commands;
pub mod doc;
pub mod error;
pub mod report;
pub mod sample;

pub use commands::{run_classify_command, run_gate_command, run_iterate_command};
pub use doc::{InputDocument, MatrixDocument};
pub use error::CliError;
pub use sample::{run_sample_command, SampleConfig};
