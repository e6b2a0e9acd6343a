use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading data or computing measures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("dangling {kind} id {id:?} referenced from {context}")]
    DanglingId {
        kind: &'static str,
        id: String,
        context: String,
    },

    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("unknown category {0:?}")]
    UnknownCategory(String),

    #[error("unknown publication {0:?}")]
    UnknownPublication(String),

    #[error("reciprocal transform needs at least one positive off-diagonal similarity")]
    NoFiniteCap,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown column {name:?}; available: {}", available.join(", "))]
    UnknownColumn {
        name: String,
        available: Vec<String>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
