use thiserror::Error;

/// Failure of a run, with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("truncation did not converge: {0}")]
    NonConvergent(String),
    #[error("only singular points: {0}")]
    SingularOnly(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Library(mesoq::Error),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NonConvergent(_) => 3,
            CliError::SingularOnly(_) => 4,
            CliError::Io(_) | CliError::Library(_) | CliError::Failed(_) => 1,
        }
    }
}

impl From<mesoq::Error> for CliError {
    fn from(e: mesoq::Error) -> Self {
        match e {
            mesoq::Error::NonConvergent { .. } | mesoq::Error::DimensionCap { .. } => CliError::NonConvergent(e.to_string()),
            mesoq::Error::InvalidParameter(_) | mesoq::Error::Unachievable { .. } => CliError::Config(e.to_string()),
            other => CliError::Library(other),
        }
    }
}
