use std::path::PathBuf;

use thiserror::Error;

/// Everything the binary can fail with; each variant has its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("cannot read {}: {msg}", .path.display())]
    Io { path: PathBuf, msg: String },

    #[error("malformed matrix file {}: {msg}", .path.display())]
    Malformed { path: PathBuf, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0}")]
    Numeric(pcone::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::NotFound(_) => 2,
            CliError::Malformed { .. } => 3,
            CliError::Dimension(_) => 4,
            CliError::Io { .. } | CliError::Numeric(_) => 5,
        }
    }
}

impl From<pcone::Error> for CliError {
    fn from(e: pcone::Error) -> Self {
        match e {
            pcone::Error::DimensionMismatch { .. } => CliError::Dimension(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}
