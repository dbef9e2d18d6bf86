//! Forest triples: NBC forests whose trees carry a composition and a root
//! index, and the signed elementary expansions built from them.

use std::collections::HashMap;

use crate::algebra::{compositions_of, Composition, ESym, Int, Partition};
use crate::graph::{EdgeSet, LabeledGraph};
use crate::{domain_err, Error, Result};

/// One tree of a forest triple: a tree of the NBC forest together with a
/// composition of its vertex count and a root index `1..=alpha_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeTriple {
    pub vertices: Vec<usize>,
    pub edge_ranks: Vec<usize>,
    pub alpha: Composition,
    pub root: u32,
}

impl TreeTriple {
    pub fn new(
        vertices: Vec<usize>,
        edge_ranks: Vec<usize>,
        alpha: Composition,
        root: u32,
    ) -> Result<Self> {
        if alpha.sum() as usize != vertices.len() {
            return domain_err("composition does not match tree size");
        }
        let first = alpha.first().ok_or_else(|| Error::Domain("empty tree".into()))?;
        if root < 1 || root > first {
            return domain_err(format!("root {root} out of range 1..={first}"));
        }
        Ok(TreeTriple { vertices, edge_ranks, alpha, root })
    }

    pub fn size(&self) -> u32 {
        self.vertices.len() as u32
    }

    pub fn min_vertex(&self) -> usize {
        self.vertices[0]
    }
}

/// A forest triple: trees ordered by smallest vertex (so the tree holding
/// vertex 1 comes first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestTriple {
    trees: Vec<TreeTriple>,
}

impl ForestTriple {
    pub fn new(mut trees: Vec<TreeTriple>) -> Self {
        trees.sort_by_key(|t| t.min_vertex());
        ForestTriple { trees }
    }

    pub fn trees(&self) -> &[TreeTriple] {
        &self.trees
    }

    /// The tree containing vertex 1.
    pub fn min_triple(&self) -> &TreeTriple {
        &self.trees[0]
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut set = EdgeSet::empty();
        for t in &self.trees {
            for &r in &t.edge_ranks {
                set.insert(r);
            }
        }
        set
    }

    /// The multiset of all composition parts, as a partition.
    pub fn type_(&self) -> Partition {
        let mut parts = Vec::new();
        for t in &self.trees {
            parts.extend_from_slice(t.alpha.parts());
        }
        Partition::new(parts)
    }

    /// The type with one copy of the minimum tree's first part removed.
    pub fn type_prime(&self) -> Partition {
        let first = self.min_triple().alpha.first().expect("nonempty");
        let mut parts = vec![];
        for (i, t) in self.trees.iter().enumerate() {
            let skip_first = i == 0;
            for (j, &p) in t.alpha.parts().iter().enumerate() {
                if skip_first && j == 0 {
                    debug_assert_eq!(p, first);
                    continue;
                }
                parts.push(p);
            }
        }
        Partition::new(parts)
    }

    /// `(-1)` to the number of composition parts beyond one per tree.
    pub fn sign(&self) -> i32 {
        let extra: usize = self.trees.iter().map(|t| t.alpha.len() - 1).sum();
        if extra % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Every composition trivial (a single part per tree).
    pub fn is_unit(&self) -> bool {
        self.trees.iter().all(|t| t.alpha.len() == 1)
    }
}

/// Number of forest triples over one NBC forest with the given tree sizes:
/// the product of `2^t - 1`.
fn triples_per_forest(sizes: &[u32]) -> u128 {
    sizes.iter().map(|&t| (1u128 << t) - 1).product()
}

/// Component sizes of `(V, set)`, plus which component holds vertex 1.
fn component_sizes(g: &LabeledGraph, set: &EdgeSet) -> (u32, Vec<u32>) {
    let mut comp: Vec<usize> = (0..=g.n()).collect();
    for rank in set.iter().take_while(|&r| r < g.m()) {
        let (u, v) = g.edges()[rank];
        let (cu, cv) = (comp[u], comp[v]);
        if cu != cv {
            for c in comp.iter_mut() {
                if *c == cv {
                    *c = cu;
                }
            }
        }
    }
    let mut size_of: HashMap<usize, u32> = HashMap::new();
    for v in 1..=g.n() {
        *size_of.entry(comp[v]).or_insert(0) += 1;
    }
    let min_size = size_of[&comp[1]];
    let mut rest: Vec<u32> = size_of
        .iter()
        .filter(|&(&label, _)| label != comp[1])
        .map(|(_, &s)| s)
        .collect();
    rest.sort_unstable();
    (min_size, rest)
}

/// Total number of forest triples of `g`.
pub fn count_forest_triples(g: &LabeledGraph) -> u128 {
    let mut total = 0u128;
    g.visit_nbc_forests(|set| {
        let (min_size, mut rest) = component_sizes(g, set);
        rest.push(min_size);
        total += triples_per_forest(&rest);
    });
    total
}

/// Materializes every forest triple of `g`. Errors with a resource report
/// if the total would exceed `cap`.
pub fn enumerate_forest_triples(g: &LabeledGraph, cap: u64) -> Result<Vec<ForestTriple>> {
    let total = count_forest_triples(g);
    if total > cap as u128 {
        return Err(Error::Resource(format!(
            "{total} forest triples exceed the cap of {cap}"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    g.visit_nbc_forests(|set| {
        expand_forest(g, set, &mut out);
    });
    Ok(out)
}

fn expand_forest(g: &LabeledGraph, set: &EdgeSet, out: &mut Vec<ForestTriple>) {
    let comps = g.components_of(set);
    let options: Vec<Vec<(Composition, u32)>> = comps
        .iter()
        .map(|c| {
            let mut opts = Vec::new();
            for alpha in compositions_of(c.vertices.len() as u32) {
                let first = alpha.first().expect("nonempty tree");
                for r in 1..=first {
                    opts.push((alpha.clone(), r));
                }
            }
            opts
        })
        .collect();
    let mut pick = vec![0usize; comps.len()];
    loop {
        let trees = comps
            .iter()
            .zip(&pick)
            .zip(&options)
            .map(|((c, &i), opts)| {
                let (alpha, root) = opts[i].clone();
                TreeTriple {
                    vertices: c.vertices.clone(),
                    edge_ranks: c.edge_ranks.clone(),
                    alpha,
                    root,
                }
            })
            .collect();
        out.push(ForestTriple::new(trees));
        // odometer
        let mut k = 0;
        loop {
            if k == pick.len() {
                return;
            }
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// The signed weight a single tree of `size` vertices contributes.
///
/// Each composition `alpha` of `size` enters with sign `(-1)^(len-1)`.
/// A plain tree contributes `alpha_1` root choices and the full sorted
/// `alpha` as elementary index; with `min_first = Some(i)` only
/// compositions with first part `i` count, the root is pinned to 1, and
/// the first part is dropped from the index. `last_at_least` restricts to
/// compositions whose final part is at least that bound.
pub fn tree_options_weight(
    size: u32,
    min_first: Option<u32>,
    last_at_least: Option<u32>,
) -> ESym {
    let mut w = ESym::zero();
    for alpha in compositions_of(size) {
        if let Some(i) = min_first {
            if alpha.first() != Some(i) {
                continue;
            }
        }
        if let Some(k) = last_at_least {
            if alpha.last().expect("nonempty") < k {
                continue;
            }
        }
        let sign: i64 = if (alpha.len() - 1) % 2 == 0 { 1 } else { -1 };
        let (key, factor) = match min_first {
            Some(_) => (alpha.drop_first().to_partition(), 1),
            None => (alpha.to_partition(), i64::from(alpha.first().expect("nonempty"))),
        };
        let term = ESym::term(key, Int::from(sign * factor));
        w = w.add(&term).expect("homogeneous weights");
    }
    w
}

/// `X_G` summed over all forest triples, grouped by forest shape so each
/// distinct multiset of tree sizes is expanded once.
pub fn csf_forest_triples(g: &LabeledGraph) -> ESym {
    let mut shapes: HashMap<Vec<u32>, u64> = HashMap::new();
    g.visit_nbc_forests(|set| {
        let (min_size, mut rest) = component_sizes(g, set);
        rest.push(min_size);
        rest.sort_unstable();
        *shapes.entry(rest).or_insert(0) += 1;
    });
    let mut weight_memo: HashMap<u32, ESym> = HashMap::new();
    let mut total = ESym::zero();
    for (sizes, count) in shapes {
        let mut product = ESym::one();
        for &t in &sizes {
            let w = weight_memo
                .entry(t)
                .or_insert_with(|| tree_options_weight(t, None, None));
            product = product.mul(w);
        }
        total = total
            .add(&product.scale(&Int::from(count)))
            .expect("homogeneous");
    }
    total
}

/// `X^(i)_G`: the sum of `sign(F) e_{type'(F)}` over forest triples whose
/// minimum tree has first part `i` and root 1.
pub fn csf_i(g: &LabeledGraph, i: u32) -> ESym {
    let mut shapes: HashMap<(u32, Vec<u32>), u64> = HashMap::new();
    g.visit_nbc_forests(|set| {
        let (min_size, mut rest) = component_sizes(g, set);
        rest.sort_unstable();
        *shapes.entry((min_size, rest)).or_insert(0) += 1;
    });
    let mut plain_memo: HashMap<u32, ESym> = HashMap::new();
    let mut min_memo: HashMap<u32, ESym> = HashMap::new();
    let mut total = ESym::zero();
    for ((min_size, sizes), count) in shapes {
        let mut product = min_memo
            .entry(min_size)
            .or_insert_with(|| tree_options_weight(min_size, Some(i), None))
            .clone();
        if product.is_zero() {
            continue;
        }
        for &t in &sizes {
            let w = plain_memo
                .entry(t)
                .or_insert_with(|| tree_options_weight(t, None, None));
            product = product.mul(w);
        }
        total = total
            .add(&product.scale(&Int::from(count)))
            .expect("homogeneous");
    }
    total
}

/// All of `X^(1)_G ..= X^(n)_G` from a single NBC enumeration; entry `[i]`
/// is `X^(i)_G` and entry `[0]` stays zero.
pub fn csf_i_table(g: &LabeledGraph) -> Vec<ESym> {
    let mut shapes: HashMap<(u32, Vec<u32>), u64> = HashMap::new();
    g.visit_nbc_forests(|set| {
        let (min_size, mut rest) = component_sizes(g, set);
        rest.sort_unstable();
        *shapes.entry((min_size, rest)).or_insert(0) += 1;
    });
    let mut plain_memo: HashMap<u32, ESym> = HashMap::new();
    let mut rest_products: HashMap<Vec<u32>, ESym> = HashMap::new();
    let mut table = vec![ESym::zero(); g.n() + 1];
    for ((min_size, sizes), count) in shapes {
        let rest = rest_products
            .entry(sizes.clone())
            .or_insert_with(|| {
                let mut product = ESym::one();
                for &t in &sizes {
                    let w = plain_memo
                        .entry(t)
                        .or_insert_with(|| tree_options_weight(t, None, None));
                    product = product.mul(w);
                }
                product
            })
            .clone();
        for i in 1..=min_size {
            let min_w = tree_options_weight(min_size, Some(i), None);
            if min_w.is_zero() {
                continue;
            }
            let part = min_w.mul(&rest).scale(&Int::from(count));
            table[i as usize] = table[i as usize].add(&part).expect("homogeneous");
        }
    }
    table
}

/// Materialized members of `FT^(i)(G)`.
pub fn ft_i_members(g: &LabeledGraph, i: u32, cap: u64) -> Result<Vec<ForestTriple>> {
    Ok(enumerate_forest_triples(g, cap)?
        .into_iter()
        .filter(|f| {
            let min = f.min_triple();
            min.alpha.first() == Some(i) && min.root == 1
        })
        .collect())
}

/// `X_G` from an explicit list of triples (`sign . e_type` summed).
pub fn csf_from_triples(triples: &[ForestTriple]) -> ESym {
    let mut total = ESym::zero();
    for f in triples {
        let term = ESym::term(f.type_(), Int::from(f.sign()));
        total = total.add(&term).expect("homogeneous");
    }
    total
}

/// Like `csf_from_triples` but using the reduced type.
pub fn csf_prime_from_triples(triples: &[ForestTriple]) -> ESym {
    let mut total = ESym::zero();
    for f in triples {
        let term = ESym::term(f.type_prime(), Int::from(f.sign()));
        total = total.add(&term).expect("homogeneous");
    }
    total
}

/// The host graph and the members of `FT'(C_a + U)`: the forest triples
/// whose tree at the cut vertex `a` swallows the attached tree whole.
///
/// `u` is glued by its vertex 1 onto vertex `a` of the cycle. A triple
/// qualifies when the tree containing `a` holds every edge of `u` and its
/// composition ends in a part of at least `|u|`.
pub fn ft_prime_members(
    a: usize,
    u: &LabeledGraph,
    cap: u64,
) -> Result<(LabeledGraph, Vec<ForestTriple>)> {
    ft_prime_members_of(&LabeledGraph::cycle(a), u, cap)
}

/// `FT'(A + U)` for an arbitrary head graph `A`, glued at `A`'s highest
/// vertex. Same filter as [`ft_prime_members`], which is the `A = C_a`
/// case.
pub fn ft_prime_members_of(
    head: &LabeledGraph,
    u: &LabeledGraph,
    cap: u64,
) -> Result<(LabeledGraph, Vec<ForestTriple>)> {
    let a = head.n();
    let g = head.graph_sum(u)?;
    let k = u.n() as u32;
    let u_ranks = EdgeSet::from_ranks(head.m()..head.m() + u.m());
    let members = enumerate_forest_triples(&g, cap)?
        .into_iter()
        .filter(|f| {
            let a_tree = f
                .trees()
                .iter()
                .find(|t| t.vertices.binary_search(&a).is_ok())
                .expect("vertex a is somewhere");
            u_ranks.is_subset_of(&EdgeSet::from_ranks(a_tree.edge_ranks.iter().copied()))
                && a_tree.alpha.last().expect("nonempty") >= k
        })
        .collect();
    Ok((g, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn esym(terms: &[(&[u32], i64)]) -> ESym {
        let mut out = ESym::zero();
        for &(parts, c) in terms {
            out = out
                .add(&ESym::term(Partition::new(parts.to_vec()), Int::from(c)))
                .unwrap();
        }
        out
    }

    #[test]
    fn edge_has_four_triples() {
        let g = LabeledGraph::path(2);
        let all = enumerate_forest_triples(&g, 1_000).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(count_forest_triples(&g), 4);
        assert_eq!(csf_from_triples(&all), esym(&[(&[2], 2)]));
        assert_eq!(csf_forest_triples(&g), esym(&[(&[2], 2)]));
    }

    #[test]
    fn triangle_has_24_triples() {
        let g = LabeledGraph::cycle(3);
        // By hand: the 6 NBC forests of C_3 split as one empty forest
        // (3 singleton trees, 1 triple), three single edges (2^1-1 times
        // 2^2-1 = 3 triples each), and two spanning trees (7 each).
        let all = enumerate_forest_triples(&g, 1_000).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(count_forest_triples(&g), 24);
        assert_eq!(csf_forest_triples(&g), esym(&[(&[3], 6)]));
    }

    #[test]
    fn doubled_edge() {
        let g = LabeledGraph::cycle(2);
        let all = enumerate_forest_triples(&g, 1_000).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(csf_forest_triples(&g), esym(&[(&[2], 2)]));
    }

    #[test]
    fn six_cycle_expansion() {
        assert_eq!(
            csf_forest_triples(&LabeledGraph::cycle(6)),
            esym(&[(&[6], 30), (&[4, 2], 18), (&[3, 3], 12), (&[2, 2, 2], 2)])
        );
    }

    #[test]
    fn factorized_matches_materialized() {
        for g in [
            LabeledGraph::cycle(4),
            LabeledGraph::clique(4),
            LabeledGraph::path(5),
            LabeledGraph::star(4),
            LabeledGraph::cycle(4).graph_sum(&LabeledGraph::cycle(3)).unwrap(),
        ] {
            let all = enumerate_forest_triples(&g, 1_000_000).unwrap();
            assert_eq!(csf_from_triples(&all), csf_forest_triples(&g), "{g:?}");
            assert_eq!(count_forest_triples(&g), all.len() as u128);
            let table = csf_i_table(&g);
            for i in 1..=g.n() as u32 {
                let members = ft_i_members(&g, i, 1_000_000).unwrap();
                assert_eq!(csf_prime_from_triples(&members), csf_i(&g, i), "{g:?} i={i}");
                assert_eq!(table[i as usize], csf_i(&g, i), "{g:?} table i={i}");
            }
        }
    }

    #[test]
    fn csf_decomposes_over_first_parts() {
        for g in [
            LabeledGraph::cycle(3),
            LabeledGraph::cycle(5),
            LabeledGraph::clique(4),
            LabeledGraph::cycle(3).graph_sum(&LabeledGraph::path(3)).unwrap(),
        ] {
            let mut sum = ESym::zero();
            for i in 1..=g.n() as u32 {
                let part = ESym::e(i).scale(&Int::from(i)).mul(&csf_i(&g, i));
                sum = sum.add(&part).unwrap();
            }
            assert_eq!(sum, csf_forest_triples(&g), "{g:?}");
        }
    }

    #[test]
    fn triangle_csf_i_values() {
        let g = LabeledGraph::cycle(3);
        assert_eq!(csf_i(&g, 3), ESym::constant(2));
        assert_eq!(csf_i(&g, 1), ESym::zero());
        // the two one-edge forests at vertex 1 cancel the two spanning trees
        assert_eq!(csf_i(&g, 2), ESym::zero());
    }

    #[test]
    fn tree_weights() {
        assert_eq!(
            tree_options_weight(2, None, None),
            esym(&[(&[2], 2), (&[1, 1], -1)])
        );
        // min tree of size 3 with first part 2: alpha = (2,1) only.
        assert_eq!(
            tree_options_weight(3, Some(2), None),
            esym(&[(&[1], -1)])
        );
        assert_eq!(tree_options_weight(3, Some(3), None), ESym::one());
        assert_eq!(tree_options_weight(2, Some(3), None), ESym::zero());
        // last part at least 2 kills every composition ending in 1.
        assert_eq!(
            tree_options_weight(3, None, Some(2)),
            esym(&[(&[3], 3), (&[2, 1], -1)])
        );
    }

    #[test]
    fn ft_prime_filters() {
        let (g, members) = ft_prime_members(3, &LabeledGraph::path(2), 100_000).unwrap();
        assert_eq!(g.n(), 4);
        for f in &members {
            let a_tree = f
                .trees()
                .iter()
                .find(|t| t.vertices.contains(&3))
                .unwrap();
            assert!(a_tree.vertices.contains(&4));
            assert!(a_tree.edge_ranks.contains(&3));
            assert!(a_tree.alpha.last().unwrap() >= 2);
        }
        // With a single-vertex attachment the filter is vacuous.
        let (g1, members1) = ft_prime_members(4, &LabeledGraph::path(1), 100_000).unwrap();
        assert_eq!(g1.edges(), LabeledGraph::cycle(4).edges());
        assert_eq!(
            members1.len() as u128,
            count_forest_triples(&LabeledGraph::cycle(4))
        );
    }

    #[test]
    fn type_prime_drops_one_copy() {
        let t1 = TreeTriple::new(vec![1, 2, 3], vec![0, 1], Composition::new(vec![2, 1]), 1)
            .unwrap();
        let t2 = TreeTriple::new(vec![4, 5], vec![3], Composition::new(vec![2]), 2).unwrap();
        let f = ForestTriple::new(vec![t2.clone(), t1.clone()]);
        assert_eq!(f.min_triple(), &t1);
        assert_eq!(f.type_(), Partition::new(vec![2, 2, 1]));
        assert_eq!(f.type_prime(), Partition::new(vec![2, 1]));
        assert_eq!(f.sign(), -1);
        assert!(!f.is_unit());
        assert!(TreeTriple::new(vec![1, 2], vec![0], Composition::new(vec![2]), 3).is_err());
        assert!(TreeTriple::new(vec![1, 2], vec![0], Composition::new(vec![1]), 1).is_err());
    }

    #[test]
    fn edge_order_does_not_change_csf() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for g in [
            LabeledGraph::clique(5),
            LabeledGraph::cycle(6),
            LabeledGraph::cycle(4).graph_sum(&LabeledGraph::clique(3)).unwrap(),
        ] {
            let base = csf_forest_triples(&g);
            for _ in 0..5 {
                let mut order: Vec<usize> = (0..g.m()).collect();
                order.shuffle(&mut rng);
                let h = g.with_edge_order(&order).unwrap();
                assert_eq!(csf_forest_triples(&h), base, "{g:?} order {order:?}");
            }
        }
    }
}
