use std::fmt;

use thiserror::Error;

use crate::graph::Edge;

/// Why a graph failed 2-tree recognition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotTwoTreeReason {
    /// |E| differs from 2n - 3 (or n < 2).
    WrongEdgeCount,
    Disconnected,
    /// Elimination stalled with no degree-2 vertex left.
    NoDegree2Simplicial,
    /// Every remaining degree-2 vertex has non-adjacent neighbors.
    NonAdjacentNeighbors,
}

impl fmt::Display for NotTwoTreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotTwoTreeReason::WrongEdgeCount => "edge count is not 2n-3",
            NotTwoTreeReason::Disconnected => "graph is disconnected",
            NotTwoTreeReason::NoDegree2Simplicial => "no degree-2 vertex left to eliminate",
            NotTwoTreeReason::NonAdjacentNeighbors => {
                "every degree-2 vertex has non-adjacent neighbors"
            }
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid 2-tree construction: {0}")]
    InvalidConstruction(String),

    #[error("{name} = {value} is out of range (requires {bound})")]
    OutOfRange {
        name: &'static str,
        value: i64,
        bound: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("edge {0} does not belong to the host graph")]
    ForeignEdge(Edge),

    #[error("not a 2-tree: {0}")]
    NotTwoTree(NotTwoTreeReason),

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("split at vertex {vertex} is illegal: edge {attach} is not in the current tree")]
    IllegalSplit { vertex: usize, attach: Edge },

    #[error("required edge set contains a cycle")]
    CyclicRequirement,

    #[error("{what} exceeds the supported limit ({limit})")]
    TooLarge { what: String, limit: String },

    #[error("graph is a book; no split can lower its count")]
    IsBook,

    #[error("graph already has exactly two simplicial vertices")]
    AlreadyTwoSimplicial,

    #[error("bad glue: {0}")]
    BadGlue(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: impl TryInto<i64>, bound: &str) -> Self {
        Error::OutOfRange {
            name,
            value: value.try_into().unwrap_or(i64::MAX),
            bound: bound.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
