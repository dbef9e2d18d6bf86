//! Sign-reversing involutions on forest triples.
//!
//! Each involution pairs up forest triples of opposite sign and equal type
//! while fixing the type's first block (the first part and root of the tree
//! containing vertex 1), so the fixed points alone account for the closed
//! formulas. The audit harness checks those axioms on fully materialized
//! domains.

mod audit;
mod compose;
mod cycle;
mod cycle_tree;

pub use audit::{audit_involution, AuditReport};
pub use compose::{composed_involution, derived_involution, restrict_to_cut, combine_at_cut};
pub use cycle::{cycle_involution, CycleClass, CycleFt};
pub use cycle_tree::{cycle_tree_involution, CycleTreeClass, CycleTreeFt, CycleTreeHost};

use crate::algebra::Composition;

/// One tree of a cyclic tuple: an arc of the cycle starting at `v`, with
/// its composition and root index. In the tuples for a cycle with an
/// attached tree, the arcs holding the attachment count its vertices in
/// `alpha` too.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcTriple {
    pub v: usize,
    pub alpha: Composition,
    pub r: u32,
}

impl ArcTriple {
    pub fn new(v: usize, alpha: impl Into<Composition>, r: u32) -> Self {
        ArcTriple { v, alpha: alpha.into(), r }
    }

    /// Vertices the arc covers (attachment included for special arcs).
    pub fn size(&self) -> u32 {
        self.alpha.sum()
    }

    pub(crate) fn first_part(&self) -> u32 {
        self.alpha.first().expect("arc composition is nonempty")
    }

    pub(crate) fn last_part(&self) -> u32 {
        self.alpha.last().expect("arc composition is nonempty")
    }
}

/// `v` advanced `step` positions around a cycle of length `a` (1-based).
pub(crate) fn step_vertex(a: usize, v: usize, step: i64) -> usize {
    let pos = (v as i64 - 1 + step).rem_euclid(a as i64);
    pos as usize + 1
}

/// Vertices of the arc of `len` cycle vertices starting at `v`.
pub(crate) fn arc_vertices(a: usize, v: usize, len: usize) -> Vec<usize> {
    (0..len).map(|j| step_vertex(a, v, j as i64)).collect()
}

/// Ranks of the cycle edges inside that arc; the edge leaving vertex `w`
/// toward its successor has rank `w - 1`.
pub(crate) fn arc_ranks(a: usize, v: usize, len: usize) -> Vec<usize> {
    (0..len.saturating_sub(1)).map(|j| step_vertex(a, v, j as i64) - 1).collect()
}
