//! File formats, subcommands and reports for the `bkit` binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::{CliError, CliResult};
