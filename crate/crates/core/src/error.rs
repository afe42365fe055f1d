use thiserror::Error;

use crate::triangulation::Label;

/// Errors raised while building or querying instances.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("vertex {vertex} is out of range for a {vertex_count}-gon")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge ({0}, {1}) has identical endpoints")]
    DegenerateEdge(usize, usize),

    #[error("({0}, {1}) is a boundary segment, not a diagonal")]
    BoundaryAsDiagonal(usize, usize),

    #[error("diagonal ({0}, {1}) is listed more than once")]
    DuplicateEdge(usize, usize),

    #[error("diagonals ({0}, {1}) and ({2}, {3}) cross")]
    CrossingDiagonals(usize, usize, usize, usize),

    #[error("a triangulation of a {vertex_count}-gon needs {expected} diagonals, got {found}")]
    NotMaximal {
        vertex_count: usize,
        expected: usize,
        found: usize,
    },

    #[error("label {0} is not a diagonal of the triangulation")]
    NotADiagonal(Label),

    #[error("diagonal {0} is not crossed by the arc")]
    NotCrossed(Label),

    #[error("the arc is degenerate (it is an edge of the triangulation)")]
    DegenerateArc,

    #[error("snake graph with {0} tiles exceeds the supported maximum of {1}")]
    TooManyTiles(usize, usize),

    #[error("label permutation must be a permutation of 1..={0}")]
    BadPermutation(usize),

    #[error("polytope dimension {dimension} exceeds the oracle bound {bound}")]
    DeskBoundExceeded { dimension: usize, bound: usize },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("edge subset is not an elementary subgraph")]
    NotElementary,

    #[error("field `{field}`: {reason}")]
    InvalidField {
        field: &'static str,
        reason: Box<Error>,
    },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
