use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by graph construction, simulation and dataset tooling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for a graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("node {0} has already been removed")]
    NodeRemoved(usize),
    #[error("graph has no active nodes")]
    EmptyGraph,
    #[error("invalid network config: {0}")]
    InvalidConfig(String),
    #[error("generator gave up after {0} consecutive rejected draws")]
    SamplingStalled(usize),
    #[error("invalid removal sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid mask: {0}")]
    InvalidMask(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("key mismatch between tables: {0}")]
    KeyMismatch(String),
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the filesystem rather than by bad input.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
