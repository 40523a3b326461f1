use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec {spec:?}: {reason}")]
    Parse { spec: String, reason: String },

    #[error("group order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("{operation} requires a group of {required} order, got order {order}")]
    WrongParity {
        operation: &'static str,
        required: &'static str,
        order: usize,
    },

    #[error("feasible spectrum did not stabilize within {budget} iterations")]
    IterationBudget { budget: usize },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(spec: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            spec: spec.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
