//! Chromatic-number bounds for graph classes defined by forbidden induced
//! subgraphs: exact invariants, induced-subgraph detectors, constructive
//! extraction procedures and the skeleton machinery for sparse induced trees.

pub mod detectors;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod planted;
pub mod scalar;
pub mod skeletons;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph};
pub use scalar::{Rational, Scalar};
