use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {order} exceeds the supported maximum of {max}", max = crate::graph::MAX_ORDER)]
    Capacity { order: usize },

    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("adjacency is not a simple undirected graph: {0}")]
    InvalidAdjacency(String),

    #[error("graph6 parse error: {0}")]
    Graph6(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("class {0} is not closed under disjoint union with cliques")]
    NotCliqueUnionClosed(crate::classes::GraphClass),

    #[error(
        "candidate generation at order {order} stopped ({reason}); supply a candidate file or seed"
    )]
    NeedsCandidates { order: usize, reason: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
