use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("empty pool: no documents found under {0}")]
    EmptyPool(PathBuf),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sample generation failed: {0}")]
    Generation(String),

    #[error("invalid segmentation: {0}")]
    InvalidSegmentation(String),

    #[error("overlapping mentions: {first} and {second} share characters at {start}..{end}")]
    OverlappingMentions {
        first: String,
        second: String,
        start: usize,
        end: usize,
    },

    #[error("annotation error in {doc_id}: {message}")]
    Annotation { doc_id: String, message: String },

    #[error("unit count mismatch: hypothesis has {hyp} units, reference has {reference}")]
    UnitMismatch { hyp: usize, reference: usize },

    #[error("window size k={k} is invalid for {n} units (need 1 <= k < n)")]
    InvalidWindow { k: usize, n: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("exhaustive search refused: {n} units exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn annotation(doc_id: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Annotation {
            doc_id: doc_id.into(),
            message: message.into(),
        }
    }
}
