//! The involution on restricted forest triples of a cycle with a tree
//! attached at vertex a.
//!
//! The domain consists of triples whose tree through vertex a swallows the
//! whole attachment and ends its composition in a part of size at least k
//! (the attachment's vertex count, a included). Such a triple is recorded
//! as a tuple of plain cycle arcs, an optional "prime" arc ending at a that
//! carries the attachment when the edge {a,1} is absent, and the arc
//! containing vertex 1, which carries the attachment itself when {a,1} is
//! present. The involution again looks for the first plain arc that can
//! trade a composition part, then falls back to moves that graft an arc
//! into the vertex-1 tree or convert between the wrapped and unwrapped
//! shapes by rotating the plain arcs. Two genuinely stuck shapes remain
//! fixed, and their census reproduces the attachment series.

use crate::algebra::Composition;
use crate::graph::LabeledGraph;
use crate::{domain_err, ForestTriple, Result, TreeTriple};

use super::{arc_ranks, arc_vertices, step_vertex, ArcTriple};

/// A cycle of length `a` with a tree `u` glued in: vertex 1 of `u` becomes
/// cycle vertex `a`, and the remaining vertices of `u` sit above `a`.
#[derive(Clone, Debug)]
pub struct CycleTreeHost {
    pub a: usize,
    pub u: LabeledGraph,
}

impl CycleTreeHost {
    pub fn new(a: usize, u: LabeledGraph) -> Result<Self> {
        if a < 2 {
            return domain_err("the cycle needs at least two vertices");
        }
        if u.m() + 1 != u.n() {
            return domain_err("the attachment must be a tree");
        }
        Ok(CycleTreeHost { a, u })
    }

    /// Vertices of the attachment, a included.
    pub fn k(&self) -> u32 {
        self.u.n() as u32
    }

    pub fn graph(&self) -> LabeledGraph {
        LabeledGraph::cycle(self.a)
            .graph_sum(&self.u)
            .expect("a validated host always composes")
    }

    pub fn attachment(&self) -> Attachment {
        Attachment {
            vertices: (self.a + 1..self.a + self.u.n()).collect(),
            edge_ranks: (self.a..self.a + self.u.m()).collect(),
        }
    }
}

/// The concrete material a tuple's special arcs carry besides cycle
/// vertices: the attachment's vertices above `a` and its edge ranks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Attachment {
    pub vertices: Vec<usize>,
    pub edge_ranks: Vec<usize>,
}

impl Attachment {
    /// Attachment size counting the shared vertex a.
    pub fn k(&self) -> u32 {
        self.vertices.len() as u32 + 1
    }
}

/// Tuple form of a restricted forest triple on a cycle with an attachment:
/// plain arcs in starting-vertex order, the optional arc ending at `a`
/// (present exactly when the edge {a,1} is absent, and then the carrier of
/// the attachment), and the arc containing vertex 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTreeFt {
    pub a: usize,
    pub k: u32,
    pub plains: Vec<ArcTriple>,
    pub prime: Option<ArcTriple>,
    pub min: ArcTriple,
}

/// Result of the classification scan. `A`/`B` carry 1-based plain
/// positions, `G`/`H` the (possibly negative) rotation distance. `I1` and
/// `I2` are the fixed shapes, with and without the edge {a,1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleTreeClass {
    A(usize),
    B(usize),
    C,
    D,
    E,
    F,
    G(i64),
    H(i64),
    I1,
    I2,
}

impl CycleTreeFt {
    pub fn new(
        a: usize,
        k: u32,
        plains: Vec<ArcTriple>,
        prime: Option<ArcTriple>,
        min: ArcTriple,
    ) -> Result<Self> {
        let ft = CycleTreeFt { a, k, plains, prime, min };
        ft.validate()?;
        Ok(ft)
    }

    /// Cycle vertices covered by the vertex-1 arc.
    fn min_cycle_len(&self) -> u32 {
        match self.prime {
            Some(_) => self.min.alpha.sum(),
            None => self.min.alpha.sum() - (self.k - 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, k) = (self.a, self.k);
        if a < 2 || k < 1 {
            return domain_err("degenerate host");
        }
        for e in self.plains.iter().chain(self.prime.iter()).chain([&self.min]) {
            let Some(first) = e.alpha.first() else {
                return domain_err("arc with an empty composition");
            };
            if e.r < 1 || e.r > first {
                return domain_err("arc root outside its first part");
            }
            if e.v < 1 || e.v > a {
                return domain_err("arc start off the cycle");
            }
        }
        // the arc through a must end in a part covering the attachment
        let a_arc = self.prime.as_ref().unwrap_or(&self.min);
        if a_arc.last_part() < k {
            return domain_err("attachment arc ends in a part smaller than the attachment");
        }
        let min_cycle = self.min_cycle_len() as usize;
        match &self.prime {
            Some(p) => {
                if self.min.v != 1 {
                    return domain_err("without the wrap edge the vertex-1 arc must start at 1");
                }
                let p_cycle = p.alpha.sum() as usize - (k as usize - 1);
                if p_cycle < 1 || p.v < 2 || p.v + p_cycle - 1 != a {
                    return domain_err("prime arc must end exactly at vertex a");
                }
                if min_cycle + 1 > p.v {
                    return domain_err("vertex-1 arc runs into the prime arc");
                }
            }
            None => {
                if self.min.v < 2 {
                    return domain_err("wrapped vertex-1 arc cannot start at 1");
                }
                let tail = a - self.min.v + 1;
                if min_cycle <= tail {
                    return domain_err("vertex-1 arc does not cross the edge {a,1}");
                }
            }
        }
        // walk the tiling: the stretch after the vertex-1 arc's cycle part
        // is covered by the plains and then the prime arc (or the wrap).
        let head = match &self.prime {
            Some(_) => min_cycle,
            None => min_cycle - (a - self.min.v + 1),
        };
        let mut cursor = head + 1;
        for e in &self.plains {
            if e.v != cursor {
                return domain_err("plain arcs do not tile the cycle");
            }
            let len = e.alpha.sum() as usize;
            cursor += len;
            if cursor > a + 1 {
                return domain_err("plain arc overruns vertex a");
            }
        }
        let stop = match &self.prime {
            Some(p) => p.v,
            None => self.min.v,
        };
        if cursor != stop {
            return domain_err("arcs do not tile the cycle");
        }
        Ok(())
    }

    pub fn classify(&self) -> CycleTreeClass {
        let m = self.plains.len();
        for (idx, e) in self.plains.iter().enumerate() {
            if e.alpha.len() >= 2 {
                return CycleTreeClass::B(idx + 1);
            }
            if e.r == 1 {
                if idx + 1 < m {
                    return CycleTreeClass::A(idx + 1);
                }
                return match self.prime {
                    None => {
                        if self.min.alpha.len() >= 2 || e.alpha.sum() >= self.k {
                            CycleTreeClass::C
                        } else {
                            CycleTreeClass::I1
                        }
                    }
                    Some(_) => CycleTreeClass::E,
                };
            }
        }
        match &self.prime {
            None => {
                if self.min.alpha.len() >= 2 {
                    let second = self.min.alpha.parts()[1];
                    if second as usize <= self.a - self.min.v {
                        CycleTreeClass::D
                    } else {
                        let v1 = self.plains.first().map_or(self.min.v, |p| p.v);
                        CycleTreeClass::H(v1 as i64 - 1 - self.min.first_part() as i64)
                    }
                } else {
                    CycleTreeClass::I1
                }
            }
            Some(p) => {
                if self.min.alpha.len() >= 2 {
                    CycleTreeClass::F
                } else if i64::from(p.r) <= i64::from(p.size() + self.min.size()) - i64::from(self.k)
                {
                    CycleTreeClass::G(i64::from(p.size()) - i64::from(self.k) - i64::from(p.r) + 1)
                } else {
                    CycleTreeClass::I2
                }
            }
        }
    }

    fn shift_plains(&mut self, step: i64) {
        for e in &mut self.plains {
            e.v = step_vertex(self.a, e.v, step);
        }
    }

    /// Applies the involution once; classes I1 and I2 come back unchanged.
    pub fn involute(&self) -> CycleTreeFt {
        let a = self.a;
        let mut out = self.clone();
        match self.classify() {
            CycleTreeClass::A(i) => {
                let right = out.plains.remove(i);
                let left = &mut out.plains[i - 1];
                left.alpha = right.alpha.concat(&left.alpha);
                left.r = right.r;
            }
            CycleTreeClass::B(i) => {
                let e = out.plains.remove(i - 1);
                let tail = e.last_part();
                out.plains.insert(
                    i - 1,
                    ArcTriple::new(step_vertex(a, e.v, tail as i64), e.alpha.drop_last(), e.r),
                );
                out.plains.insert(i - 1, ArcTriple::new(e.v, Composition::single(tail), 1));
            }
            CycleTreeClass::C => {
                let t = out.plains.pop().expect("class C has a plain arc");
                let first = Composition::single(out.min.first_part());
                let rest = out.min.alpha.drop_first();
                out.min = ArcTriple::new(t.v, first.concat(&t.alpha).concat(&rest), out.min.r);
            }
            CycleTreeClass::D => {
                let second = out.min.alpha.parts()[1];
                out.plains.push(ArcTriple::new(out.min.v, Composition::single(second), 1));
                out.min = ArcTriple::new(
                    step_vertex(a, out.min.v, second as i64),
                    out.min.alpha.remove(1),
                    out.min.r,
                );
            }
            CycleTreeClass::E => {
                let t = out.plains.pop().expect("class E has a plain arc");
                out.shift_plains(t.alpha.sum() as i64);
                out.min.alpha = out.min.alpha.concat(&t.alpha);
            }
            CycleTreeClass::F => {
                let tail = out.min.last_part();
                out.shift_plains(-(tail as i64));
                let v_prime = out.prime.as_ref().expect("class F has a prime arc").v;
                out.plains.push(ArcTriple::new(
                    step_vertex(a, v_prime, -(tail as i64)),
                    Composition::single(tail),
                    1,
                ));
                out.min.alpha = out.min.alpha.drop_last();
            }
            CycleTreeClass::G(i) => {
                out.shift_plains(i);
                let p = out.prime.take().expect("class G has a prime arc");
                out.min = ArcTriple::new(
                    a - p.r as usize + 1,
                    out.min.alpha.concat(&p.alpha),
                    out.min.r,
                );
            }
            CycleTreeClass::H(i) => {
                out.shift_plains(-i);
                out.prime = Some(ArcTriple::new(
                    step_vertex(a, out.min.v, -i),
                    out.min.alpha.drop_first(),
                    (a - out.min.v + 1) as u32,
                ));
                out.min = ArcTriple::new(1, Composition::single(out.min.first_part()), out.min.r);
            }
            CycleTreeClass::I1 | CycleTreeClass::I2 => {}
        }
        out
    }

    pub fn to_forest_triple(&self, att: &Attachment) -> ForestTriple {
        debug_assert_eq!(att.k(), self.k);
        let a = self.a;
        let mut trees: Vec<TreeTriple> = self
            .plains
            .iter()
            .map(|e| {
                let len = e.alpha.sum() as usize;
                TreeTriple {
                    vertices: arc_vertices(a, e.v, len),
                    edge_ranks: arc_ranks(a, e.v, len),
                    alpha: e.alpha.clone(),
                    root: e.r,
                }
            })
            .collect();
        let attach = |arc_v: usize, cycle_len: usize| -> (Vec<usize>, Vec<usize>) {
            let mut vertices = arc_vertices(a, arc_v, cycle_len);
            vertices.extend_from_slice(&att.vertices);
            vertices.sort_unstable();
            let mut ranks = arc_ranks(a, arc_v, cycle_len);
            ranks.extend_from_slice(&att.edge_ranks);
            ranks.sort_unstable();
            (vertices, ranks)
        };
        match &self.prime {
            Some(p) => {
                let p_cycle = p.alpha.sum() as usize - (self.k as usize - 1);
                let (vertices, edge_ranks) = attach(p.v, p_cycle);
                trees.push(TreeTriple { vertices, edge_ranks, alpha: p.alpha.clone(), root: p.r });
                let e = self.min.alpha.sum() as usize;
                trees.push(TreeTriple {
                    vertices: arc_vertices(a, 1, e),
                    edge_ranks: arc_ranks(a, 1, e),
                    alpha: self.min.alpha.clone(),
                    root: self.min.r,
                });
            }
            None => {
                let (vertices, edge_ranks) = attach(self.min.v, self.min_cycle_len() as usize);
                trees.push(TreeTriple {
                    vertices,
                    edge_ranks,
                    alpha: self.min.alpha.clone(),
                    root: self.min.r,
                });
            }
        }
        for t in &mut trees {
            t.vertices.sort_unstable();
            t.edge_ranks.sort_unstable();
        }
        ForestTriple::new(trees)
    }

    pub fn from_forest_triple(a: usize, att: &Attachment, f: &ForestTriple) -> Result<Self> {
        let k = att.k();
        let mut plains = Vec::new();
        let mut prime = None;
        let mut min = None;
        let mut wrapped = false;
        for tree in f.trees() {
            let extra: Vec<usize> = tree.vertices.iter().copied().filter(|&w| w > a).collect();
            let holds_a = tree.vertices.binary_search(&a).is_ok();
            let cycle_ranks: Vec<usize> =
                tree.edge_ranks.iter().copied().filter(|&r| r < a).collect();
            if holds_a {
                if extra != att.vertices {
                    return domain_err("attachment is split across trees");
                }
                let high: Vec<usize> =
                    tree.edge_ranks.iter().copied().filter(|&r| r >= a).collect();
                if high != att.edge_ranks {
                    return domain_err("attachment edges do not match");
                }
            } else if !extra.is_empty() {
                return domain_err("attachment vertex outside the arc through a");
            }
            let rank_set: std::collections::BTreeSet<usize> = cycle_ranks.iter().copied().collect();
            let cycle_vertices: Vec<usize> =
                tree.vertices.iter().copied().filter(|&w| w <= a).collect();
            let mut starts = cycle_vertices.iter().copied().filter(|&w| {
                let pred = (w + a - 2) % a;
                !rank_set.contains(&pred)
            });
            let v = starts
                .next()
                .ok_or_else(|| crate::Error::Domain("tree is not an arc of the cycle".into()))?;
            if starts.next().is_some() {
                return domain_err("tree is not a single arc of the cycle");
            }
            let mut expect = arc_vertices(a, v, cycle_vertices.len());
            expect.sort_unstable();
            if expect != cycle_vertices {
                return domain_err("tree is not an arc of the cycle");
            }
            let arc = ArcTriple::new(v, tree.alpha.clone(), tree.root);
            let holds_one = tree.vertices[0] == 1;
            if holds_a && holds_one {
                wrapped = true;
                min = Some(arc);
            } else if holds_a {
                prime = Some(arc);
            } else if holds_one {
                min = Some(arc);
            } else {
                plains.push(arc);
            }
        }
        let min = min.ok_or_else(|| crate::Error::Domain("no arc contains vertex 1".into()))?;
        if wrapped && prime.is_some() {
            return domain_err("both a wrapped arc and a prime arc");
        }
        plains.sort_by_key(|e| e.v);
        CycleTreeFt::new(a, k, plains, prime, min)
    }
}

/// The involution on restricted forest triples of `host`, expressed on
/// forest triples of the glued graph directly.
pub fn cycle_tree_involution(host: &CycleTreeHost, f: &ForestTriple) -> Result<ForestTriple> {
    let att = host.attachment();
    let tuple = CycleTreeFt::from_forest_triple(host.a, &att, f)?;
    let image = tuple.involute();
    image.validate()?;
    Ok(image.to_forest_triple(&att))
}
