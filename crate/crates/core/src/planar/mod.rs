//! Graphs, near-triangulation validation, and the decompositions the
//! inductive certifiers walk: chord splits and vertex peeling.

mod embedding;
mod format;
mod generate;
mod graph;
mod near;
mod roles;

pub use format::{RawGraph, GRAPH_HEADER};
pub use generate::{clique_sum, default_shared, generate, Family};
pub use graph::{Edge, Graph, Names};
pub use near::{NearTriangulation, PeelStep};
pub use roles::RoleAssignment;
