//! Chromatic symmetric functions in the elementary basis via forest triples.
//!
//! The library computes `X_G` for a labeled (multi)graph `G` three independent
//! ways and cross-checks them:
//!
//! * summing signed elementary terms over all forest triples of `G`
//!   (subsets of edges avoiding broken circuits, each tree carrying a
//!   composition and a root index),
//! * closed formulas for cycles, cycles with an attached tree, two cycles
//!   glued at a vertex, and chains of cycles/cliques assembled through the
//!   `B` transfer series,
//! * a brute-force proper-coloring oracle in the monomial basis.
//!
//! On top of that it implements the sign-reversing, first-preserving
//! involutions that explain the cancellations behind the closed formulas,
//! together with an audit harness that checks the involution axioms on fully
//! materialized domains.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod cli;
pub mod formulas;
pub mod forest_triples;
pub mod graph;
pub mod involution;
pub mod oracle;

pub use algebra::{compositions_of, Composition, ESym, Int, Partition};
pub use forest_triples::{ForestTriple, TreeTriple};
pub use graph::{ChainSpec, EdgeSet, LabeledGraph, SegmentKind};

/// Errors surfaced by fallible library operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-domain input (bad composition split, invalid
    /// graph description, mismatched degrees, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured resource cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
