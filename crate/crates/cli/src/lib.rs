//! Command-line driver for `ncwave-core`: JSON configs in, CSV and SVG out.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

pub use commands::{cmd_classical, cmd_compare, cmd_run, CompareReport, RunReport};
pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use verify::{run_verify, VerifyOptions, VerifyReport};
