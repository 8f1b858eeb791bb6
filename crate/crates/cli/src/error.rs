use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Physics(#[from] lorentzgen_core::Error),

    #[error("{failed} identity check(s) failed")]
    IdentityFailure { failed: usize },
}

impl CliError {
    /// 1 validation, 2 runtime physics or I/O, 3 identity failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Read { .. } => 1,
            CliError::Physics(_) | CliError::Write { .. } => 2,
            CliError::IdentityFailure { .. } => 3,
        }
    }
}
