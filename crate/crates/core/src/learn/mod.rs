//! Learning chordal graphs from conditional-independence answers.
//!
//! The learner is a PC-style edge-removal sweep with two additions: candidate
//! separating sets must be complete in the current graph, and whenever a
//! separator `Z∪γ∪δ` is found after both `Z∪γ` and `Z∪δ` failed, the edge
//! `γ–δ` is fixed as a true edge.

mod citest;
mod dataset;
mod sample;
mod skeleton;
mod triangulate;

pub use citest::{g2_test, CiDecision, CiSource, DataCi, OracleCi};
pub use dataset::Dataset;
pub use sample::{random_chordal_graph, sample_dataset};
pub use skeleton::{learn_skeleton, skeleton_f1, LearnConfig, LearnResult, Sepset};
pub use triangulate::chordalize;
