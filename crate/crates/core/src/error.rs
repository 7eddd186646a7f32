use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("vertex {vertex} out of range (graph has {node_count} vertices)")]
    VertexOutOfRange { vertex: usize, node_count: usize },

    #[error("partition covers {found} vertices but the graph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },

    #[error("labeling is inconsistent with the graph: {0}")]
    LabelingMismatch(String),

    #[error("no weak ties: {0}")]
    NoWeakTies(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
