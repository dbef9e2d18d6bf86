//! The involution on forest triples of a cycle.
//!
//! Every NBC forest of the cycle C_a is a disjoint union of arcs, so a
//! forest triple can be written as a tuple of arc triples listed with the
//! arc containing vertex 1 last and the others in order of their starting
//! vertex. The involution scans for the first arc that can absorb or shed
//! a composition part without disturbing the first block, and when no arc
//! qualifies it rotates the whole configuration to merge the last two arcs
//! (or splits the merged arc back apart). Fixed points carry one part per
//! arc and roots that block every move; summed over types they produce
//! exactly the closed cycle formula.

use crate::algebra::Composition;
use crate::{domain_err, ForestTriple, Result, TreeTriple};

use super::{step_vertex, ArcTriple};

/// Tuple form of a forest triple on C_a: arcs tile the cycle, the arc
/// containing vertex 1 sits last and wraps through the edge {a,1} exactly
/// when its starting vertex exceeds 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFt {
    pub a: usize,
    pub entries: Vec<ArcTriple>,
}

/// Where the scan lands. Indices are 1-based tuple positions; the payload
/// of `C` and `D` is the rotation distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    A(usize),
    B(usize),
    C(u32),
    D(u32),
    E,
}

impl CycleFt {
    pub fn new(a: usize, entries: Vec<ArcTriple>) -> Result<Self> {
        let ft = CycleFt { a, entries };
        ft.validate()?;
        Ok(ft)
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.a;
        if a < 2 {
            return domain_err("cycle tuples need a >= 2");
        }
        let m = self.entries.len();
        if m == 0 {
            return domain_err("cycle tuple has no arcs");
        }
        let total: u32 = self.entries.iter().map(|e| e.alpha.sum()).sum();
        if total != a as u32 {
            return domain_err(format!("arc lengths sum to {total}, expected {a}"));
        }
        for e in &self.entries {
            if e.v < 1 || e.v > a {
                return domain_err(format!("arc start {} out of range", e.v));
            }
            let Some(first) = e.alpha.first() else {
                return domain_err("arc with an empty composition");
            };
            if e.r < 1 || e.r > first {
                return domain_err("arc root outside its first part");
            }
        }
        let min = &self.entries[m - 1];
        let min_len = min.alpha.sum() as usize;
        if min.v != 1 && min.v + min_len < a + 2 {
            return domain_err("last arc does not contain vertex 1");
        }
        if m == 1 {
            if min.v == 1 {
                // the spanning path rooted along 1..a is the broken circuit
                return domain_err("broken circuit is not an NBC forest");
            }
            return Ok(());
        }
        for e in &self.entries[..m - 1] {
            let len = e.alpha.sum() as usize;
            if e.v < 2 || e.v + len - 1 > a {
                return domain_err("plain arc wraps around the cycle");
            }
        }
        for i in 0..m - 1 {
            let e = &self.entries[i];
            let succ = step_vertex(a, e.v, e.alpha.sum() as i64);
            if succ != self.entries[i + 1].v {
                return domain_err("arcs do not tile the cycle");
            }
        }
        let wrap_succ = step_vertex(a, min.v, min_len as i64);
        if wrap_succ != self.entries[0].v {
            return domain_err("arcs do not tile the cycle");
        }
        Ok(())
    }

    pub fn to_forest_triple(&self) -> ForestTriple {
        let trees = self
            .entries
            .iter()
            .map(|e| {
                let len = e.alpha.sum() as usize;
                let mut vertices = super::arc_vertices(self.a, e.v, len);
                vertices.sort_unstable();
                let mut edge_ranks = super::arc_ranks(self.a, e.v, len);
                edge_ranks.sort_unstable();
                TreeTriple { vertices, edge_ranks, alpha: e.alpha.clone(), root: e.r }
            })
            .collect();
        ForestTriple::new(trees)
    }

    pub fn from_forest_triple(a: usize, f: &ForestTriple) -> Result<Self> {
        let mut plains: Vec<ArcTriple> = Vec::new();
        let mut min: Option<ArcTriple> = None;
        for tree in f.trees() {
            let ranks: std::collections::BTreeSet<usize> = tree.edge_ranks.iter().copied().collect();
            let mut starts = tree.vertices.iter().copied().filter(|&w| {
                let pred_rank = (w + a - 2) % a;
                !ranks.contains(&pred_rank)
            });
            let v = starts
                .next()
                .ok_or_else(|| crate::Error::Domain("tree is not an arc of the cycle".into()))?;
            if starts.next().is_some() {
                return domain_err("tree is not a single arc of the cycle");
            }
            let arc = ArcTriple::new(v, tree.alpha.clone(), tree.root);
            let mut expect: Vec<usize> = (0..tree.vertices.len())
                .map(|j| step_vertex(a, v, j as i64))
                .collect();
            expect.sort_unstable();
            if expect != tree.vertices {
                return domain_err("tree is not an arc of the cycle");
            }
            if tree.vertices[0] == 1 {
                min = Some(arc);
            } else {
                plains.push(arc);
            }
        }
        let min = min.ok_or_else(|| crate::Error::Domain("no arc contains vertex 1".into()))?;
        plains.sort_by_key(|e| e.v);
        plains.push(min);
        CycleFt::new(a, plains)
    }

    pub fn classify(&self) -> CycleClass {
        let m = self.entries.len();
        for (idx, e) in self.entries[..m - 1].iter().enumerate() {
            if e.alpha.len() >= 2 {
                return CycleClass::B(idx + 1);
            }
            if e.r == 1 {
                return CycleClass::A(idx + 1);
            }
        }
        let min = &self.entries[m - 1];
        if min.v == 1 {
            // m >= 2 here: the single-arc tuple starting at 1 is excluded
            return CycleClass::C(self.entries[m - 2].r - 1);
        }
        if min.alpha.len() >= 2 {
            let head = (self.a - min.v + 1) as u32;
            let tail = min.last_part();
            if tail <= head {
                CycleClass::B(m)
            } else {
                CycleClass::D(tail - head)
            }
        } else {
            CycleClass::E
        }
    }

    /// Applies the involution once. The output is again a valid tuple for
    /// the same cycle; class E inputs come back unchanged.
    pub fn involute(&self) -> CycleFt {
        let a = self.a;
        let mut out = self.entries.clone();
        match self.classify() {
            CycleClass::A(i) => {
                let idx = i - 1;
                let right = out.remove(idx + 1);
                let left = &mut out[idx];
                left.alpha = right.alpha.concat(&left.alpha);
                left.r = right.r;
            }
            CycleClass::B(i) => {
                let idx = i - 1;
                let e = out.remove(idx);
                let tail = e.last_part();
                let head = ArcTriple::new(e.v, Composition::single(tail), 1);
                let rest = ArcTriple::new(
                    step_vertex(a, e.v, tail as i64),
                    e.alpha.drop_last(),
                    e.r,
                );
                out.insert(idx, rest);
                out.insert(idx, head);
            }
            CycleClass::C(i) => {
                let min = out.pop().expect("tuple is nonempty");
                let prev = out.pop().expect("class C needs a plain arc");
                for e in &mut out {
                    e.v = step_vertex(a, e.v, i as i64);
                }
                out.push(ArcTriple::new(
                    step_vertex(a, prev.v, i as i64),
                    min.alpha.concat(&prev.alpha),
                    min.r,
                ));
            }
            CycleClass::D(i) => {
                let min = out.pop().expect("tuple is nonempty");
                for e in &mut out {
                    e.v = step_vertex(a, e.v, -(i as i64));
                }
                let tail = min.last_part();
                out.push(ArcTriple::new(
                    step_vertex(a, min.v, -(i as i64)),
                    Composition::single(tail),
                    i + 1,
                ));
                out.push(ArcTriple::new(1, min.alpha.drop_last(), min.r));
            }
            CycleClass::E => {}
        }
        CycleFt { a, entries: out }
    }
}

/// The involution expressed directly on forest triples of `cycle(a)`.
pub fn cycle_involution(a: usize, f: &ForestTriple) -> Result<ForestTriple> {
    let tuple = CycleFt::from_forest_triple(a, f)?;
    let image = tuple.involute();
    image.validate()?;
    Ok(image.to_forest_triple())
}
