use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("{0}-{1} is not a voting edge")]
    NotAVotingEdge(VertexId, VertexId),

    #[error("pair {0}-{1} appears as both a voting and a non-voting edge")]
    EdgeInBothSets(VertexId, VertexId),

    #[error("vertex {vertex} has voting degree {degree}; expansion needs at least {min}")]
    DegreeTooSmall {
        vertex: VertexId,
        degree: usize,
        min: usize,
    },

    #[error("vertex {vertex} has {forced} forced neighbors out of {degree}; majority expansion needs 2 <= b <= degree/2")]
    MajorityOutOfRange {
        vertex: VertexId,
        forced: usize,
        degree: usize,
    },

    #[error("graph is not forced-dense; the expansion stopped too early")]
    NotForcedDense,

    #[error("{what} budget exceeded: need {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u128,
    },

    #[error("coloring does not assign a color to vertex {0}")]
    PartialColoring(VertexId),

    #[error("color {color} at vertex {vertex} is outside [0, {k})")]
    ColorOutOfRange {
        vertex: VertexId,
        color: u32,
        k: u32,
    },

    #[error("interpolation produced a non-integral coefficient {0}")]
    NonIntegral(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),

    #[error("clique list is not a partition of the vertex set: {0}")]
    NotAPartition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
