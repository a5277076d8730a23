use std::process::ExitCode;

use selflock_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("spec file: {0}")]
    Spec(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Spec(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    /// Maps a core error raised while handling a spec file.
    pub fn from_spec(e: Error) -> Self {
        match e {
            Error::Spec(_) | Error::Index(_) => CliError::Spec(e.to_string()),
            other => other.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::Singular(_) => CliError::Domain(e.to_string()),
            Error::Index(_) | Error::Schedule(_) | Error::Spec(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<&CliError> for ExitCode {
    fn from(e: &CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}
