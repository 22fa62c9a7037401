use thiserror::Error;

/// Command failure, mapped onto the process exit code.
#[derive(Debug, Clone, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Analysis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Analysis(_) => 3,
        }
    }
}

impl From<netdim::Error> for CliError {
    fn from(err: netdim::Error) -> Self {
        use netdim::Error as E;
        match err {
            E::Parse { .. } | E::NoEdges | E::Disconnected { .. } => CliError::Input(err.to_string()),
            E::Argument(_) => CliError::Usage(err.to_string()),
            _ => CliError::Analysis(err.to_string()),
        }
    }
}
