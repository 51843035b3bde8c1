//! Command-line driver and file formats for `qsym-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod parallel;

pub use error::{CliError, CliResult};
