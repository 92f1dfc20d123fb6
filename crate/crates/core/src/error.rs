use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("invalid weight {weight} at vertex {vertex}")]
    InvalidWeight { vertex: usize, weight: f64 },
    #[error("graph power must be at least 1")]
    ZeroPower,
    #[error("set distance of an empty set")]
    EmptySet,
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClusteringError {
    #[error("eps must lie in (0, 1], got {0}")]
    InvalidEps(f64),
    #[error("cannot partition an empty graph")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("congestion parameter must be positive and finite, got {0}")]
    InvalidGamma(f64),
    #[error("flow solver did not converge: {0}")]
    NonConvergence(String),
    #[error("flow invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("crude model rejected: {0}")]
    Crude(String),
    #[error("fat model rejected: {0}")]
    Fat(String),
    #[error("pattern graph: {0}")]
    Pattern(String),
    #[error("sampling: {0}")]
    Sampling(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("quotient separator oracle returned an unbalanced set: {0}")]
    Oracle(String),
    #[error("output failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Clustering(#[from] ClusteringError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("graph has fewer than two positive-weight vertices")]
    Degenerate,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid generator parameters: {0}")]
    Params(String),
}
