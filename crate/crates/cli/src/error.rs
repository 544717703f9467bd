use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: line {line}: {message}", path = path.display())]
    ConfigParse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Config(#[from] ci_core::ConfigError),
    #[error("{path}: {source}", path = path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 1 for usage and configuration problems, 3 for I/O and internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::ConfigParse { .. } | CliError::Config(_) => 1,
            CliError::Io { .. } | CliError::Internal(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<ci_core::HarnessError> for CliError {
    fn from(e: ci_core::HarnessError) -> Self {
        match e {
            ci_core::HarnessError::Config(c) => CliError::Config(c),
            ci_core::HarnessError::OracleBudget(_) | ci_core::HarnessError::UnknownTable(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}
