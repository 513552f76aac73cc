use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    NonNormalizable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 ok, 1 verification failure, 2 usage error, 3 non-normalizable state.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NonNormalizable(_) => 3,
            CliError::Verification(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

impl From<kgpdm::model::ModelError> for CliError {
    fn from(e: kgpdm::model::ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}
