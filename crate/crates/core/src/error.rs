use thiserror::Error;

/// Errors produced across the coloring pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("cannot contract: {0}")]
    Contract(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no second-neighborhood structure found after trying {roots_tried} roots")]
    StructureNotFound { roots_tried: usize },

    #[error("degree pruning removed every vertex of the structure")]
    PruneCollapse,

    #[error("invariant breach at depth {depth}: {detail}")]
    InvariantBreach { depth: usize, detail: String },

    #[error("oracle refuses graph with {n} vertices (limit {limit})")]
    OracleRefusal { n: usize, limit: usize },

    #[error("graph has no proper 3-coloring")]
    NotThreeColorable,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
