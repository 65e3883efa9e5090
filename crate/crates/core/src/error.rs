use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot place {m} edges on {n} vertices without loops or parallel edges")]
    InfeasibleEdgeCount { n: usize, m: usize },
    #[error("operation requires an undirected graph")]
    DirectedInput,
    #[error("operation requires a directed graph")]
    UndirectedInput,
    #[error("operation requires unit edge weights (max weight is {max_weight})")]
    WeightedInput { max_weight: u64 },
    #[error("edge set contains a cycle through {0} and {1}")]
    NotAForest(usize, usize),
    #[error("vertices {0} and {1} lie in different trees")]
    DifferentTrees(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("{0}")]
    BoundViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
