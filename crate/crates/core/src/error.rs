use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid edge {{{u}, {v}}}: loops are not allowed")]
    InvalidEdge { u: usize, v: usize },

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph order {0} is outside the supported range 1..=16")]
    UnsupportedOrder(usize),

    #[error("operation requires a nonempty vertex set")]
    EmptySet,

    #[error("the complement of the vertex set is empty; separator status is undefined")]
    EmptyComplement,

    #[error("no simple path visits exactly the vertex set {0}")]
    NoPath(String),

    #[error("vertex {0} is not on the path")]
    NotOnPath(usize),

    #[error("graph6 format error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("line {line}: expected a graph on {expected} vertices, found {found}")]
    OrderMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: graph is not connected")]
    Disconnected { line: usize },

    #[error("n = {n} is outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("invalid shard {shard_id}/{shard_count}")]
    InvalidShard { shard_id: usize, shard_count: usize },

    #[error("not a claim of the replayed lemma: {0}")]
    NotAClaim(String),

    #[error("witness failure: {0}")]
    WitnessFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reduction assertion failed: {0}")]
    ReductionFailure(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("shard mismatch: {0}")]
    ShardMismatch(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
