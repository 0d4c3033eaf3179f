use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Math(#[from] jacring::Error),
    #[error("{0}")]
    Internal(String),
}

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Parse,
    Precondition,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Parse => 3,
            ErrorKind::Precondition => 4,
            ErrorKind::Internal => 5,
        }
    }
}

impl CliError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => ErrorKind::Usage,
            CliError::Math(e) if e.is_parse() => ErrorKind::Parse,
            CliError::Math(e) if e.is_precondition() => ErrorKind::Precondition,
            CliError::Math(jacring::Error::InvalidModulus(_) | jacring::Error::UnknownField(_)) => ErrorKind::Usage,
            CliError::Math(_) | CliError::Internal(_) => ErrorKind::Internal,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}
