use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("simulation failed: {0}")]
    Model(#[from] qdmod_core::Error),
}

impl CliError {
    /// 1 for configuration problems, 2 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}
