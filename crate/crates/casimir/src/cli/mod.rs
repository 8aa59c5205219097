//! Command-line front end: configuration loading, the `force`, `sweep`,
//! `compare`, and `table1` subcommands, and their human/CSV/JSON reports.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 engine
//! non-convergence, 3 published-table mismatch under `table1 --check`.

mod commands;
mod config;
mod output;

pub use config::{parse_a_range, parse_models, Cli, Command, FileConfig, OutputFormat, RunConfig};
pub use output::{csv_header, emit_csv, parse_csv, SweepRow};

use crate::engine::EngineError;
use clap::Parser;
use std::ffi::OsString;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(EngineError),
    #[error("published-table check failed for {failures} of {total} entries")]
    GoldenMismatch { failures: usize, total: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Engine(_) => 2,
            CliError::GoldenMismatch { .. } => 3,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            // configuration problems are usage errors, not runtime failures
            EngineError::InvalidConfig(msg) => CliError::Usage(msg),
            other => CliError::Engine(other),
        }
    }
}

/// Parse arguments, run the selected command, report errors on stderr, and
/// return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
