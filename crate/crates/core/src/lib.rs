//! Decomposable (chordal-isomorphic) dependency models.
//!
//! * [`graph`]: vertex sets, undirected graphs, separation, enumeration.
//! * [`chordal`]: chordality recognition, elimination orderings, clique trees.
//! * [`model`]: the `I(X, Y | Z)` oracle and its graph, DAG and table forms.
//! * [`axioms`]: checkers for the independence axioms C1–C9'.
//! * [`verify`]: exhaustive verification sweeps over all small labeled graphs.
//! * [`learn`]: constraint-based learning of chordal graphs from data.

pub mod axioms;
pub mod chordal;
pub mod error;
pub mod graph;
pub mod learn;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{UndirectedGraph, VertexSet};
