use casimir_core::{LifshitzError, ModelError, ReflectionError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }
}

impl From<LifshitzError> for CliError {
    fn from(e: LifshitzError) -> Self {
        match e {
            LifshitzError::InvalidScenario(_) | LifshitzError::Model(ModelError::InvalidParameter { .. }) => {
                CliError::Config(e.to_string())
            }
            LifshitzError::Model(ModelError::Unsupported(_))
            | LifshitzError::Reflection(ReflectionError::UnsupportedZeroMode(_)) => CliError::Config(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        LifshitzError::from(e).into()
    }
}

impl From<ReflectionError> for CliError {
    fn from(e: ReflectionError) -> Self {
        LifshitzError::from(e).into()
    }
}
