use thiserror::Error;

use rtmm_core::{ModelError, SearchError};

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad user input: unknown names, impossible settings, malformed files.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("engine error: {0}")]
    Engine(#[from] ModelError),
    #[error("search error: {0}")]
    Search(#[from] SearchError),
    #[error("record error: {0}")]
    Record(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn is_config(&self) -> bool {
        matches!(self, HarnessError::Config(_))
    }
}
