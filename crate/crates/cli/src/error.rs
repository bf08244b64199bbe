use std::fmt;
use std::path::Path;

use cowrite_core::embeddings::EmbeddingError;
use cowrite_core::session_log::LogError;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const INPUT: i32 = 2;
pub const IO: i32 = 3;

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: INPUT,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        Self {
            code: IO,
            message: format!("{}: {err}", path.display()),
        }
    }

    pub fn log(path: &Path, err: LogError) -> Self {
        match err {
            LogError::Io(e) => Self::io(path, e),
            other => Self::input(format!("{}: {other}", path.display())),
        }
    }

    pub fn embeddings(path: &Path, err: EmbeddingError) -> Self {
        match err {
            EmbeddingError::Io(e) => Self::io(path, e),
            other => Self::input(format!("{}: {other}", path.display())),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type Result<T> = std::result::Result<T, Failure>;
