use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("stream order has {order} entries but the graph has {graph} vertices")]
    SizeMismatch { order: usize, graph: usize },

    #[error("vertex {0} has not been assigned to a partition")]
    Unassigned(u32),

    #[error("vertex {0} is already assigned")]
    AlreadyAssigned(u32),

    #[error("every partition is at capacity {capacity}; k*C cannot hold the graph")]
    AllPartitionsFull { capacity: u64 },

    #[error("graph has no cluster labels")]
    MissingLabels,

    #[error("urn has no ball to attach to")]
    EmptyUrn,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("experiment spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
