//! Snake graphs, perfect matching expansions and Newton polytopes of cluster
//! variables for triangulated polygons.
//!
//! The pipeline runs from a [`Triangulation`] and an [`Arc`] to the
//! [`SnakeGraph`] of the arc, its perfect matchings and Laurent expansion
//! ([`expansion`]), closed-form inequality descriptions of the Newton
//! polytope ([`polytope`]) and the lattice of elementary subgraphs
//! ([`face_lattice`]). The [`oracle`] module recomputes the geometry from
//! points alone and [`verify`] compares the two.

pub mod error;
pub mod expansion;
pub mod face_lattice;
pub mod linalg;
pub mod oracle;
pub mod polytope;
pub mod snake_graph;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};
pub use expansion::{laurent_expansion, specialize_boundary, LaurentPolynomial};
pub use face_lattice::FaceLattice;
pub use polytope::{HRep, VRep};
pub use snake_graph::SnakeGraph;
pub use triangulation::{Arc, Label, LabelMap, SubTriangulation, Triangulation, TriangulationSpec};
