use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = ShellError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum ShellError {
    #[error(transparent)]
    Core(#[from] vc_core::Error),

    #[error("cannot parse command: {0}")]
    Command(String),

    #[error("format error at line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("typecheck failed: {failures} judgment(s) do not hold")]
    TypeCheck { report: String, failures: usize },
}

impl ShellError {
    pub(crate) fn command(msg: impl Into<String>) -> Self {
        ShellError::Command(msg.into())
    }
}
