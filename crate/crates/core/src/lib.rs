//! Spanning trees of 2-trees: recognition, repetition-free enumeration,
//! exact counting, and the extremal reattachment surgeries.

pub mod counting;
pub mod enumeration;
pub mod error;
pub mod extremal;
pub mod format;
pub mod generators;
pub mod graph;
pub mod recognition;

pub use error::{Error, NotTwoTreeReason, Result};
pub use graph::{
    is_spanning_tree, prefix_graph, realize, Attachment, BigCount, Edge, SimpleGraph, SpanningTree,
    TwoTreeConstruction, VertexId,
};
