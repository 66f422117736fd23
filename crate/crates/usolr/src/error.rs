//! Error types shared across the crate.

use thiserror::Error;

/// Why a proposed move is rejected by [`crate::config::apply_move`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveErrorKind {
    /// The vertex sequence is not a simple path in the graph.
    NotAPath,
    /// The vertex sequence is not a simple cycle in the graph.
    NotACycle,
    /// The final path vertex is occupied.
    TargetOccupied,
    /// The first path vertex carries no robot.
    SourceEmpty,
    /// Some interior path vertex carries no robot.
    GapInPath,
    /// Some cycle vertex carries no robot.
    CycleNotFull,
}

impl std::fmt::Display for MoveErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            MoveErrorKind::NotAPath => "vertex sequence is not a simple path",
            MoveErrorKind::NotACycle => "vertex sequence is not a simple cycle",
            MoveErrorKind::TargetOccupied => "target vertex is occupied",
            MoveErrorKind::SourceEmpty => "source vertex is empty",
            MoveErrorKind::GapInPath => "interior path vertex is empty",
            MoveErrorKind::CycleNotFull => "cycle is not fully occupied",
        };
        f.write_str(msg)
    }
}

/// Errors raised while parsing graph or configuration text.
///
/// Every variant names the 1-based physical line it was found on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: vertex {v} listed twice in configuration")]
    DuplicateVertex { line: usize, v: usize },
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid move: {kind}")]
    InvalidMove { kind: MoveErrorKind },
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex {v} out of range for graph with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("duplicate vertex {v}")]
    DuplicateVertex { v: usize },
    #[error("robot count {p} invalid for graph with {n} vertices")]
    RobotCountOutOfRange { p: usize, n: usize },
    #[error("mapping entries do not form a permutation")]
    NotAPermutation,
    #[error("configurations occupy different vertex sets")]
    OccupiedSetsDiffer,
    #[error("graph is not a simple cycle")]
    NotACycleGraph,
    #[error("state budget of {cap} configurations exceeded")]
    StateCapExceeded { cap: usize },
    #[error("per-component cycle budget of {cap} exceeded")]
    CycleCapExceeded { cap: usize },
    #[error("graph is already universally solvable for {p} robots")]
    AlreadySolvable { p: usize },
    #[error("no augmentation within the searched budget achieves universal solvability")]
    NoAugmentationFound,
    #[error("augmentation verification failed: {detail}")]
    VerificationFailed { detail: String },
    #[error("invalid family parameters: {msg}")]
    InvalidFamily { msg: String },
}

impl Error {
    /// True for budget-exhaustion errors, as opposed to invalid-input ones.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::StateCapExceeded { .. } | Error::CycleCapExceeded { .. }
        )
    }
}
