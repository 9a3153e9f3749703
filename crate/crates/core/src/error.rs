use crate::graph::{Edge, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),

    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),

    #[error("label {0} is already in use")]
    LabelCollision(Vertex),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size bound exceeded: {what} has {size} vertices, limit is {limit}")]
    SizeBound {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid cycle pair: {0}")]
    InvalidPair(String),

    #[error("permutation error: {0}")]
    Permutation(String),

    #[error("invalid minor map: {0}")]
    InvalidMinorMap(String),

    #[error("degenerate diagram: {0}")]
    Degenerate(String),

    #[error("crossing data mismatch: {0}")]
    CrossingData(String),

    #[error("non-generic projection direction {0:?}: {1}")]
    NonGenericDirection([i64; 3], String),

    #[error("embedding error: {0}")]
    Embedding(String),

    #[error("unsupported (p,q) = ({0},{1})")]
    UnsupportedType(usize, usize),

    #[error("host mismatch: {0}")]
    HostMismatch(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
