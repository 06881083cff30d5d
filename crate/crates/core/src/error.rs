use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    ZeroOrder,
    #[error("edge ({u}, {v}) has an endpoint outside 0..{order}")]
    EndpointOutOfRange { u: usize, v: usize, order: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("number of copies must be at least 1")]
    ZeroCopies,
    #[error("every vertex is isolated")]
    AllIsolated,
    #[error("vertex {vertex} is outside 0..{order}")]
    MemberOutOfRange { vertex: usize, order: usize },
    #[error("instance of size {size} exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("parameter {value} out of range: {reason}")]
    ParameterOutOfRange { value: usize, reason: String },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("edge ({0}, {1}) lies within one side of the bipartition")]
    EdgeWithinSide(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown reduction `{0}`")]
    UnknownReduction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
