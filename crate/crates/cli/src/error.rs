use rml_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for usage and input problems, 3 for size guards, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 2,
            CliError::Core(e) => match e {
                CoreError::SizeGuardExceeded { .. } | CoreError::PartitionGuardExceeded { .. } => 3,
                CoreError::NonPrime(_)
                | CoreError::InvalidParameter(_)
                | CoreError::Malformed(_)
                | CoreError::TowerMismatch
                | CoreError::DimMismatch { .. }
                | CoreError::LengthMismatch { .. }
                | CoreError::DependentEmbedding
                | CoreError::SpecInvariantViolated(_) => 2,
                _ => 1,
            },
        }
    }
}
