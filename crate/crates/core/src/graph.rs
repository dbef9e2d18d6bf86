//! Labeled multigraphs with ordered edges, NBC forests, and the graph
//! constructions the closed formulas are stated for.

use std::fmt;
use std::str::FromStr;

use crate::{domain_err, Error, Result};

/// Hard cap on edge count so edge sets fit in a word.
pub const MAX_EDGES: usize = 64;

/// A set of edge ranks, backed by a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub fn empty() -> Self {
        EdgeSet(0)
    }

    pub fn from_ranks(ranks: impl IntoIterator<Item = usize>) -> Self {
        let mut s = EdgeSet(0);
        for r in ranks {
            s.insert(r);
        }
        s
    }

    pub fn insert(&mut self, rank: usize) {
        debug_assert!(rank < MAX_EDGES);
        self.0 |= 1 << rank;
    }

    pub fn remove(&mut self, rank: usize) {
        self.0 &= !(1 << rank);
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.0 >> rank & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_EDGES).filter(move |&r| self.contains(r))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A connected piece of a spanning forest: its vertices and edge ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edge_ranks: Vec<usize>,
}

/// A graph on vertices `1..=n` with an ordered edge list (the rank of an
/// edge is its position). Parallel edges are allowed, loops are not.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return domain_err("graph needs at least one vertex");
        }
        if edges.len() > MAX_EDGES {
            return domain_err(format!("at most {MAX_EDGES} edges supported"));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return domain_err(format!("loop at vertex {u}"));
            }
            if u < 1 || v < 1 || u > n || v > n {
                return domain_err(format!("edge ({u},{v}) out of range 1..={n}"));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(LabeledGraph { n, edges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The cycle `C_a`, `a >= 2`; the rank-`w-1` edge joins `w` to `w mod a + 1`.
    /// `C_2` is the doubled edge.
    pub fn cycle(a: usize) -> Self {
        assert!(a >= 2, "cycle needs at least 2 vertices");
        let edges = (1..=a).map(|w| (w, w % a + 1)).collect();
        LabeledGraph::new(a, edges).expect("valid cycle")
    }

    /// The complete graph `K_k`, edges in lexicographic order.
    pub fn clique(k: usize) -> Self {
        assert!(k >= 1);
        let mut edges = Vec::new();
        for u in 1..=k {
            for v in u + 1..=k {
                edges.push((u, v));
            }
        }
        LabeledGraph::new(k, edges).expect("valid clique")
    }

    /// The path on `k` vertices.
    pub fn path(k: usize) -> Self {
        assert!(k >= 1);
        let edges = (1..k).map(|u| (u, u + 1)).collect();
        LabeledGraph::new(k, edges).expect("valid path")
    }

    /// The star on `k` vertices, centered at vertex 1.
    pub fn star(k: usize) -> Self {
        assert!(k >= 1);
        let edges = (2..=k).map(|v| (1, v)).collect();
        LabeledGraph::new(k, edges).expect("valid star")
    }

    /// A tree given by its edges; validates connectivity and acyclicity.
    pub fn tree(k: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = LabeledGraph::new(k, edges)?;
        if g.m() != k - 1 || g.components_of(&EdgeSet::from_ranks(0..g.m())).len() != 1 {
            return domain_err("edge list is not a tree");
        }
        Ok(g)
    }

    /// Glues `other`'s vertex 1 onto `self`'s largest vertex. The combined
    /// graph keeps `self`'s edges first, then `other`'s shifted up.
    pub fn graph_sum(&self, other: &LabeledGraph) -> Result<Self> {
        let shift = self.n - 1;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        LabeledGraph::new(self.n + other.n - 1, edges)
    }

    /// Reorders the edge list; `order[i]` is the old rank of the new rank-`i`
    /// edge. `order` must be a permutation of `0..m`.
    pub fn with_edge_order(&self, order: &[usize]) -> Result<Self> {
        let m = self.m();
        let mut seen = vec![false; m];
        if order.len() != m {
            return domain_err("edge order has wrong length");
        }
        for &i in order {
            if i >= m || seen[i] {
                return domain_err("edge order is not a permutation");
            }
            seen[i] = true;
        }
        let edges = order.iter().map(|&i| self.edges[i]).collect();
        LabeledGraph::new(self.n, edges)
    }

    /// Parses the plain-text format: a `n <count>` line, then `e <u> <v>`
    /// lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let bad = || Error::Domain(format!("line {}: cannot parse {raw:?}", lineno + 1));
            match tok.next() {
                Some("n") => {
                    let count = tok.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    if n.replace(count).is_some() {
                        return domain_err(format!("line {}: duplicate n line", lineno + 1));
                    }
                }
                Some("e") => {
                    let u = tok.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    let v = tok.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    edges.push((u, v));
                }
                _ => return Err(bad()),
            }
            if tok.next().is_some() {
                return Err(bad());
            }
        }
        let n = n.ok_or_else(|| Error::Domain("missing n line".into()))?;
        LabeledGraph::new(n, edges)
    }

    /// Connected components of the spanning subgraph `(V, set)`, ordered by
    /// smallest vertex; isolated vertices appear as singletons.
    pub fn components_of(&self, set: &EdgeSet) -> Vec<Component> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n + 1];
        for rank in set.iter().take_while(|&r| r < self.m()) {
            let (u, v) = self.edges[rank];
            adj[u].push((v, rank));
            adj[v].push((u, rank));
        }
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut vertices = Vec::new();
            let mut edge_ranks = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                vertices.push(u);
                for &(v, rank) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                    if self.edges[rank].0 == u {
                        edge_ranks.push(rank);
                    }
                }
            }
            vertices.sort_unstable();
            edge_ranks.sort_unstable();
            edge_ranks.dedup();
            out.push(Component { vertices, edge_ranks });
        }
        out
    }

    /// All broken circuits: for every simple cycle, its edge set minus the
    /// largest rank.
    pub fn broken_circuits(&self) -> Vec<EdgeSet> {
        let m = self.m();
        let mut out = Vec::new();
        // Each cycle is found once, from its least-rank edge.
        for least in 0..m {
            let (u, v) = self.edges[least];
            // Simple paths v -> u through edges of larger rank.
            let mut visited = vec![false; self.n + 1];
            visited[v] = true;
            let mut path = EdgeSet::from_ranks([least]);
            self.broken_circuit_walk(least, u, v, &mut visited, &mut path, &mut out);
        }
        out
    }

    fn broken_circuit_walk(
        &self,
        least: usize,
        target: usize,
        at: usize,
        visited: &mut Vec<bool>,
        path: &mut EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        for rank in least + 1..self.m() {
            if path.contains(rank) {
                continue;
            }
            let (x, y) = self.edges[rank];
            let w = if x == at {
                y
            } else if y == at {
                x
            } else {
                continue;
            };
            if w == target {
                let mut bc = path.union(&EdgeSet::from_ranks([rank]));
                let max = bc.iter().last().expect("nonempty cycle");
                bc.remove(max);
                out.push(bc);
            } else if !visited[w] {
                visited[w] = true;
                path.insert(rank);
                self.broken_circuit_walk(least, target, w, visited, path, out);
                path.remove(rank);
                visited[w] = false;
            }
        }
    }

    /// Whether `set` is a forest avoiding every broken circuit.
    ///
    /// Uses the path criterion: the set must be acyclic, and for every
    /// outside edge whose endpoints the set connects, the connecting path
    /// must contain an edge of larger rank.
    pub fn is_nbc_forest(&self, set: &EdgeSet) -> bool {
        let mut comp: Vec<usize> = (0..=self.n).collect();
        for rank in set.iter().take_while(|&r| r < self.m()) {
            let (u, v) = self.edges[rank];
            let (cu, cv) = (comp[u], comp[v]);
            if cu == cv {
                return false; // cycle
            }
            for c in comp.iter_mut() {
                if *c == cv {
                    *c = cu;
                }
            }
        }
        for g in 0..self.m() {
            if set.contains(g) {
                continue;
            }
            let (u, v) = self.edges[g];
            if comp[u] != comp[v] {
                continue;
            }
            let path = self.forest_path(set, u, v).expect("endpoints connected");
            if path.iter().all(|&rank| rank < g) {
                return false; // the path is a broken circuit for g
            }
        }
        true
    }

    /// Edge ranks on the unique `set`-path between `u` and `v`, if connected.
    fn forest_path(&self, set: &EdgeSet, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n + 1];
        for rank in set.iter().take_while(|&r| r < self.m()) {
            let (x, y) = self.edges[rank];
            adj[x].push((y, rank));
            adj[y].push((x, rank));
        }
        // BFS remembering the edge into each vertex.
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[u] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = Vec::new();
                let mut at = v;
                while at != u {
                    let (p, rank) = prev[at].expect("walked");
                    path.push(rank);
                    at = p;
                }
                return Some(path);
            }
            for &(y, rank) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, rank));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Visits every NBC forest exactly once (the empty set included).
    ///
    /// The search adds edges in rank order. When the set so far is NBC, a
    /// new edge never closes a cycle (a cycle of smaller-rank edges would
    /// contain a broken circuit), so the only check needed is that no
    /// larger-rank edge connects the two components being merged.
    pub fn visit_nbc_forests(&self, mut visit: impl FnMut(&EdgeSet)) {
        let comp: Vec<usize> = (0..=self.n).collect();
        self.nbc_walk(0, comp, EdgeSet::empty(), &mut visit);
    }

    fn nbc_walk(
        &self,
        next: usize,
        comp: Vec<usize>,
        set: EdgeSet,
        visit: &mut impl FnMut(&EdgeSet),
    ) {
        if next == self.m() {
            visit(&set);
            return;
        }
        // Exclude edge `next`.
        self.nbc_walk(next + 1, comp.clone(), set, visit);
        // Include it, unless that would complete a broken circuit.
        let (u, v) = self.edges[next];
        let (cu, cv) = (comp[u], comp[v]);
        debug_assert_ne!(cu, cv);
        let blocked = (next + 1..self.m()).any(|f| {
            let (x, y) = self.edges[f];
            (comp[x] == cu && comp[y] == cv) || (comp[x] == cv && comp[y] == cu)
        });
        if blocked {
            return;
        }
        let mut merged = comp;
        for c in merged.iter_mut() {
            if *c == cv {
                *c = cu;
            }
        }
        let mut bigger = set;
        bigger.insert(next);
        self.nbc_walk(next + 1, merged, bigger, visit);
    }

    /// All NBC forests, in the order `visit_nbc_forests` produces them.
    pub fn nbc_forests(&self) -> Vec<EdgeSet> {
        let mut out = Vec::new();
        self.visit_nbc_forests(|s| out.push(*s));
        out
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// One segment of a chain: a cycle or a clique of a given size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Cycle,
    Clique,
}

/// A chain of cycles and cliques glued at cut vertices, e.g. `C4+K3+C5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub segments: Vec<(SegmentKind, usize)>,
}

impl ChainSpec {
    pub fn vertex_count(&self) -> usize {
        let sum: usize = self.segments.iter().map(|&(_, s)| s).sum();
        sum + 1 - self.segments.len()
    }

    pub fn edge_count(&self) -> usize {
        self.segments
            .iter()
            .map(|&(kind, s)| match kind {
                SegmentKind::Cycle => s,
                SegmentKind::Clique => s * (s - 1) / 2,
            })
            .sum()
    }

    pub fn to_graph(&self) -> Result<LabeledGraph> {
        let mut iter = self.segments.iter();
        let &(kind, size) = iter.next().expect("parse guarantees a segment");
        let mut g = Self::segment_graph(kind, size);
        for &(kind, size) in iter {
            g = g.graph_sum(&Self::segment_graph(kind, size))?;
        }
        Ok(g)
    }

    fn segment_graph(kind: SegmentKind, size: usize) -> LabeledGraph {
        match kind {
            SegmentKind::Cycle => LabeledGraph::cycle(size),
            SegmentKind::Clique => LabeledGraph::clique(size),
        }
    }
}

impl FromStr for ChainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut segments = Vec::new();
        for tok in s.split('+') {
            let tok = tok.trim();
            let bad = || Error::Domain(format!("bad chain segment {tok:?}"));
            let (kind, rest) = match tok.chars().next() {
                Some('C') | Some('c') => (SegmentKind::Cycle, &tok[1..]),
                Some('K') | Some('k') => (SegmentKind::Clique, &tok[1..]),
                _ => return Err(bad()),
            };
            let size: usize = rest.parse().map_err(|_| bad())?;
            let min = match kind {
                SegmentKind::Cycle => 2,
                SegmentKind::Clique => 1,
            };
            if size < min {
                return Err(bad());
            }
            segments.push((kind, size));
        }
        if segments.is_empty() {
            return domain_err("empty chain");
        }
        Ok(ChainSpec { segments })
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(kind, size)) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let letter = match kind {
                SegmentKind::Cycle => 'C',
                SegmentKind::Clique => 'K',
            };
            write!(f, "{letter}{size}")?;
        }
        Ok(())
    }
}
