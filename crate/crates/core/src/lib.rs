//! Proper graph labelings.
//!
//! A labeling puts positive integers on the vertices or edges of a graph and
//! induces a vertex colouring `c` through one of eight rules (sum, product,
//! gap, degree, maximum). The labeling is *proper* when `c` is a proper
//! colouring. This crate verifies, decides and constructs such labelings and
//! generates the NP-hardness reductions for them.

pub mod constructions;
pub mod experiment;
pub mod formula;
pub mod graph;
pub mod reductions;
pub mod semantics;
pub mod solvers;

pub use formula::{Formula, Lit, Mode};
pub use graph::{Bipartition, Graph};
pub use semantics::{Color, ElementKind, Labeling, LabelingRule, Verdict};
