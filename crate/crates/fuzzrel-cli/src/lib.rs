//! Command-line front end for `fuzzrel-core`: spec-string grammar, CSV
//! ingestion, command dispatch and report rendering.

pub mod commands;
pub mod grammar;
pub mod ingest;
pub mod report;

use fuzzrel_core::FuzzError;
use thiserror::Error;

pub use commands::{run_command, Cli, Command, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] FuzzError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 1 for bad input, 2 for a failed internal check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(FuzzError::Postcondition(_)) | CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}

/// Caps the global rayon pool at `FUZZREL_THREADS` when it is set.
pub fn configure_threads() -> Result<Option<usize>, CliError> {
    let Ok(raw) = std::env::var("FUZZREL_THREADS") else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Validation(format!(
            "FUZZREL_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Some(n))
}
