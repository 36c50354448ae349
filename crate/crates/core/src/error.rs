use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// Classical MDS needs two nonnegative eigenvalues.
    #[error("degenerate embedding: fewer than 2 nonnegative eigenvalues in {0:?}")]
    DegenerateEmbedding(Vec<f64>),

    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("json export failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
