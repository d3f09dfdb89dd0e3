use std::path::PathBuf;

/// Errors raised by file IO and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] polytile_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("output failed: {0}")]
    Output(String),
}

impl IoError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        IoError::Parse { line, message: message.into() }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IoError::File { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, IoError>;
