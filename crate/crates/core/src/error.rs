use thiserror::Error;

use crate::graph::StreamKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed edge ({u}, {v}): self-loops are not allowed")]
    MalformedEdge { u: u32, v: u32 },

    #[error("invalid stream at event {index}: {reason}")]
    StreamValidity { index: usize, reason: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("stream kind {found} is not accepted here (expected {expected})")]
    StreamKind { expected: &'static str, found: StreamKind },

    #[error("out-of-band oracle query for vertex {0}: no arrived edge carries its prediction")]
    OutOfBandQuery(u32),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("sketch format error: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Domain(_) | Error::StreamKind { .. } | Error::Json(_) => 2,
            Error::MalformedEdge { .. } | Error::StreamValidity { .. } | Error::Format(_) => 3,
            Error::Capacity(_) => 4,
            Error::OutOfBandQuery(_) | Error::Io(_) | Error::Csv(_) => 1,
        }
    }
}
