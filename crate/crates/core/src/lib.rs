//! Exact chromatic polynomials and DP color functions for small graphs,
//! together with the structural tests (edge girth parity, spanning-tree
//! certificates, gluing constructions) that predict when the two agree.
//!
//! Everything is exact: polynomial coefficients and counts are big
//! integers, and searches either finish or refuse up front.

pub mod constructions;
pub mod cover;
pub mod exec;
pub mod graph;
pub mod poly;
pub mod structure;
pub mod verify;

pub use graph::{Edge, Graph, GraphError, Vertex};
pub use poly::Polynomial;
