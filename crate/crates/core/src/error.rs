use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex out of range: {vertex} >= {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error(
        "dense table for n = {n} exceeds the limit of {limit} vertices; use the sparse metric"
    )]
    Capacity { n: usize, limit: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("oracle covers {oracle} vertices but the graph has {graph}")]
    SizeMismatch { oracle: usize, graph: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
