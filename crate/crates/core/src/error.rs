use thiserror::Error;

/// Errors raised while building or analysing diagrams, states and matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("empty diagram: crossingless diagrams are not representable")]
    EmptyDiagram,

    #[error("label {label} occurs {count} times (expected exactly 2)")]
    BadLabels { label: u64, count: usize },

    #[error("diagram is not planar: V - E + F = {euler} (expected 2 per connected piece)")]
    NonPlanar { euler: i64 },

    #[error("orientation conflict at edge {label}")]
    OrientationConflict { label: u64 },

    #[error("diagram or graph is disconnected")]
    Disconnected,

    #[error("state has {got} labels but the diagram has {expected} crossings")]
    LengthMismatch { expected: usize, got: usize },

    #[error("bad state character {ch:?} at position {pos} (expected 'A' or 'B')")]
    BadCharacter { ch: char, pos: usize },

    #[error("edge {edge} does not join vertices {v} and {w}")]
    NotAdjacent { edge: usize, v: usize, w: usize },

    #[error("vertices {v} and {w} do not decompose the graph along edge {edge}")]
    NotDecomposing { edge: usize, v: usize, w: usize },

    #[error("graph is not bipartite (odd cycle through vertex {vertex}); the state surface is non-orientable")]
    NotBipartite { vertex: usize },

    #[error("reduced graph carries both labels; the homology matrix needs an all-A or all-B graph")]
    MixedLabels,

    #[error("reduced graph has cut vertex {vertex}; decompose it first")]
    CutVertex { vertex: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid size {0}")]
    InvalidSize(usize),

    #[error("census bound exceeded: {crossings} crossings > {bound}")]
    BoundExceeded { crossings: usize, bound: usize },

    #[error("diagram has {components} components; only knots are supported")]
    NotAKnot { components: usize },

    #[error("diagram is not alternating")]
    NotAlternatingDiagram,

    #[error("diagram is not reduced: crossing {crossing} is nugatory")]
    NotReduced { crossing: usize },

    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
