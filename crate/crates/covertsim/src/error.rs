//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors produced by simulation components.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A linear solve hit a (numerically) singular matrix.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// A requested enumeration exceeds the hard size guard.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An experiment configuration is invalid.
    #[error("configuration error: {0}")]
    Config(String),
    /// File I/O failure, with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
