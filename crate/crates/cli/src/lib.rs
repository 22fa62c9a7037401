//! Library side of the `netdim` command: pipeline commands and report
//! writers, kept separate from argument parsing so they can be tested
//! directly.

pub mod commands;
mod error;
pub mod num;
pub mod report;

pub use error::CliError;
