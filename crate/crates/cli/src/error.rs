use std::path::PathBuf;

use thiserror::Error;

/// All checks passed.
pub const EXIT_PASS: i32 = 0;
/// The command ran but at least one check exceeded its threshold.
pub const EXIT_FAIL: i32 = 1;
/// Bad flags, config or parameters (including CFL refusal).
pub const EXIT_USAGE: i32 = 2;
/// Reading the config or writing a report failed.
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] semiphoton::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => EXIT_IO,
            Self::Usage(_) | Self::Core(_) => EXIT_USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
