//! Command-line front end for `riskcurves-core`.
//!
//! Everything the binary prints is produced here as a `String`, so the
//! emitters can be tested without spawning a process.

pub mod commands;
pub mod config;
mod error;
pub mod fixed;
pub mod levels_report;
pub mod plot;
pub mod sample_file;

pub use error::{CliError, EXIT_IO, EXIT_NUMERICAL, EXIT_VALIDATION};
