//! Command implementations behind the `harnack` binary.
//!
//! Every command writes data to stdout or a file and diagnostics to stderr.
//! Exit status: 0 success, 1 verification failure, 2 usage or range error,
//! 3 I/O failure.

pub mod commands;
pub mod sweep;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] harnack::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
