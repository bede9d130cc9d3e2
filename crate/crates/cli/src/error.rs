use std::path::PathBuf;

use thiserror::Error;

/// Input errors; all of them map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] ordunit::Error),
}
