//! Topological coding toolkit: graph operations, labelings, Topcode-matrices,
//! number-based strings, leaf-adding extensions, degree sequences, graphic groups
//! and the authentication pipeline built on them.

pub mod auth;
pub mod degseq;
pub mod graph;
pub mod groups;
pub mod labeling;
pub mod networks;
pub mod rla;
pub mod strings;
pub mod topcode;

pub use graph::{DegreeSequence, Graph, GraphError};
