use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("oracle refused: n = {n} exceeds the oracle limit {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("maximum label size {k} exceeds the cap {cap}; the engine builds 2^O(k) boxes per query")]
    LabelCap { k: usize, cap: usize },
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap { what: &'static str, value: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("channel {channel} out of range ({channels} channels)")]
    Channel { channel: usize, channels: usize },
    #[error("inverse shifted-weight query hit a singularity (delta + value = 0)")]
    Singularity,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid elimination forest: {0}")]
    InvalidForest(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
