use thiserror::Error;

use crate::diagram::{DartId, NodeId};

/// Errors raised by diagram operations.
///
/// Validation failures are reported through [`crate::diagram::ValidationReport`];
/// this enum covers precondition violations of individual operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("diagram is invalid: {0}")]
    InvalidDiagram(String),

    #[error("operation requires a link diagram, but node {0} is a vertex")]
    NotALink(NodeId),

    #[error("vertex {0} has odd valence {1}")]
    OddValence(NodeId, usize),

    #[error("operation requires a diagram with exactly one vertex")]
    NotSingleVertex,

    #[error("edge {0} passes through crossings")]
    EdgeHasCrossings(DartId),

    #[error("no such edge: {0}")]
    NoSuchEdge(DartId),

    #[error("move is not applicable at its site: {0}")]
    InapplicableMove(String),

    #[error("replacement arity mismatch at target {target}: expected {expected} attachments, got {got}")]
    ArityMismatch {
        target: String,
        expected: usize,
        got: usize,
    },

    #[error("replacement targets overlap or touch each other: {0}")]
    OverlappingTargets(String),

    #[error("invalid replacement fragment: {0}")]
    InvalidFragment(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
