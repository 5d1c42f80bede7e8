use std::process::ExitCode;

use thiserror::Error;

/// CLI failure, split by exit code: 1 for usage/validation, 2 for data.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(1),
            CliError::Data(_) => ExitCode::from(2),
        }
    }

    pub fn data(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        CliError::Data(format!("{context}: {err}"))
    }
}

impl From<combinf_core::Error> for CliError {
    fn from(e: combinf_core::Error) -> Self {
        use combinf_core::Error as E;
        match e {
            E::InvalidParameter { .. } | E::Config { .. } => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
