//! Splitting forest triples at a cut vertex and composing involutions
//! across it.
//!
//! For a graph built by gluing some `gprime` onto vertex a of a cycle, a
//! forest triple restricts to one triple per side: the tree through the
//! cut keeps the prefix shape of its composition on the cycle side
//! (retaining its root, which may then overshoot the shortened first
//! part) and the suffix shape on the attachment side (rerooted at 1).
//! Gluing the two pieces back merges the seam parts, which overlap in the
//! cut vertex and so recombine to one part of their sum less one.
//!
//! An involution on the attachment's triples then extends to the whole
//! graph: triples whose attachment side moves are recombined with the
//! moved side, and triples whose attachment side is fixed — necessarily a
//! unit, so the cut tree's composition ends in a part at least as large
//! as its attachment portion — are handed to the cycle-with-tree
//! involution, with everything hanging off the cut tree treated as the
//! attached tree.

use std::collections::HashMap;

use crate::{domain_err, Error, ForestTriple, Result, TreeTriple};

use super::cycle_tree::{Attachment, CycleTreeFt};

/// Splits `f` at cut vertex `a` into a triple on the cycle `C_a` (whose
/// cut tree may carry a root beyond its first part) and a triple on the
/// attachment in local labels, where the cut vertex becomes vertex 1 and
/// global vertex `a + t` becomes `1 + t`.
pub fn restrict_to_cut(a: usize, f: &ForestTriple) -> Result<(ForestTriple, ForestTriple)> {
    let mut cycle_trees = Vec::new();
    let mut attach_trees = Vec::new();
    let mut cut = None;
    for tree in f.trees() {
        if tree.vertices.binary_search(&a).is_ok() {
            cut = Some(tree);
        } else if tree.vertices[0] > a {
            attach_trees.push(relabel_down(a, tree));
        } else {
            cycle_trees.push(tree.clone());
        }
    }
    let cut = cut.ok_or_else(|| Error::Domain(format!("no tree contains the cut vertex {a}")))?;
    let cycle_part: Vec<usize> = tree_side(cut, |w| w <= a);
    let attach_part: Vec<usize> = tree_side(cut, |w| w >= a);
    let cycle_piece = TreeTriple {
        vertices: cycle_part.clone(),
        edge_ranks: cut.edge_ranks.iter().copied().filter(|&r| r < a).collect(),
        alpha: cut.alpha.split_first(cycle_part.len() as u32)?,
        root: cut.root,
    };
    let attach_piece = TreeTriple {
        vertices: attach_part.iter().map(|&w| w - (a - 1)).collect(),
        edge_ranks: cut.edge_ranks.iter().copied().filter(|&r| r >= a).map(|r| r - a).collect(),
        alpha: cut.alpha.split_last(attach_part.len() as u32)?,
        root: 1,
    };
    cycle_trees.push(cycle_piece);
    attach_trees.push(attach_piece);
    Ok((ForestTriple::new(cycle_trees), ForestTriple::new(attach_trees)))
}

/// Inverse of the restriction: glues a cycle-side triple and a local
/// attachment-side triple back together at the cut vertex, merging the
/// seam parts into one part of size `last + first - 1`. Errors when the
/// kept root cannot sit inside the merged first part.
pub fn combine_at_cut(
    a: usize,
    cycle_side: &ForestTriple,
    attach_side: &ForestTriple,
) -> Result<ForestTriple> {
    let mut trees = Vec::new();
    let mut cycle_cut = None;
    for tree in cycle_side.trees() {
        if tree.vertices.binary_search(&a).is_ok() {
            cycle_cut = Some(tree);
        } else {
            trees.push(tree.clone());
        }
    }
    let cycle_cut =
        cycle_cut.ok_or_else(|| Error::Domain(format!("cycle side misses vertex {a}")))?;
    let mut attach_cut = None;
    for tree in attach_side.trees() {
        if tree.vertices[0] == 1 {
            attach_cut = Some(tree);
        } else {
            trees.push(relabel_up(a, tree));
        }
    }
    let attach_cut =
        attach_cut.ok_or_else(|| Error::Domain("attachment side misses vertex 1".into()))?;
    if attach_cut.root != 1 {
        return domain_err("attachment side must be rooted at the cut vertex");
    }
    let left = &cycle_cut.alpha;
    let right = &attach_cut.alpha;
    let seam = left.last().expect("nonempty") + right.first().expect("nonempty") - 1;
    let alpha = left
        .drop_last()
        .concat(&crate::algebra::Composition::single(seam))
        .concat(&right.drop_first());
    let first = alpha.first().expect("nonempty");
    if cycle_cut.root > first {
        return domain_err(format!(
            "root {} cannot sit inside the merged first part {first}",
            cycle_cut.root
        ));
    }
    let mut vertices = cycle_cut.vertices.clone();
    vertices.extend(attach_cut.vertices.iter().skip(1).map(|&w| w + (a - 1)));
    vertices.sort_unstable();
    let mut edge_ranks = cycle_cut.edge_ranks.clone();
    edge_ranks.extend(attach_cut.edge_ranks.iter().map(|&r| r + a));
    edge_ranks.sort_unstable();
    trees.push(TreeTriple { vertices, edge_ranks, alpha, root: cycle_cut.root });
    Ok(ForestTriple::new(trees))
}

fn tree_side(tree: &TreeTriple, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    tree.vertices.iter().copied().filter(|&w| keep(w)).collect()
}

fn relabel_down(a: usize, tree: &TreeTriple) -> TreeTriple {
    TreeTriple {
        vertices: tree.vertices.iter().map(|&w| w - (a - 1)).collect(),
        edge_ranks: tree.edge_ranks.iter().map(|&r| r - a).collect(),
        alpha: tree.alpha.clone(),
        root: tree.root,
    }
}

fn relabel_up(a: usize, tree: &TreeTriple) -> TreeTriple {
    TreeTriple {
        vertices: tree.vertices.iter().map(|&w| w + (a - 1)).collect(),
        edge_ranks: tree.edge_ranks.iter().map(|&r| r + a).collect(),
        alpha: tree.alpha.clone(),
        root: tree.root,
    }
}

/// Builds a type- and first-preserving, sign-reversing involution on an
/// explicit domain by pairing opposite signs within each bucket of equal
/// invariants, preferring to pair away the non-unit positives so that
/// every leftover fixed point is a positive unit. Errors when a bucket
/// cannot be paired that way.
pub fn derived_involution(
    domain: &[ForestTriple],
) -> Result<HashMap<ForestTriple, ForestTriple>> {
    use std::collections::BTreeMap;
    type Key = (crate::Partition, Option<u32>, u32);
    let mut buckets: BTreeMap<Key, Vec<&ForestTriple>> = BTreeMap::new();
    for f in domain {
        let min = f.min_triple();
        buckets
            .entry((f.type_(), min.alpha.first(), min.root))
            .or_default()
            .push(f);
    }
    let mut map = HashMap::with_capacity(domain.len());
    for fs in buckets.into_values() {
        let mut negatives: Vec<&ForestTriple> = Vec::new();
        let mut plus_units: Vec<&ForestTriple> = Vec::new();
        let mut plus_rest: Vec<&ForestTriple> = Vec::new();
        for f in fs {
            if f.sign() < 0 {
                negatives.push(f);
            } else if f.is_unit() {
                plus_units.push(f);
            } else {
                plus_rest.push(f);
            }
        }
        negatives.sort();
        plus_rest.sort();
        plus_units.sort();
        if negatives.len() < plus_rest.len() {
            return domain_err("cannot pair away every non-unit positive triple");
        }
        let mut positives = plus_rest;
        positives.extend(plus_units);
        if negatives.len() > positives.len() {
            return domain_err("more negative than positive triples in a bucket");
        }
        for (n, p) in negatives.iter().zip(&positives) {
            map.insert((*n).clone(), (*p).clone());
            map.insert((*p).clone(), (*n).clone());
        }
        for u in &positives[negatives.len()..] {
            map.insert((*u).clone(), (*u).clone());
        }
    }
    Ok(map)
}

/// Extends an involution on the attachment's forest triples to the glued
/// graph. When the attachment side moves under `phi_prime`, the moved
/// side is glued back on; when it is fixed, the cycle-side trees together
/// with the whole cut tree are run through the cycle-with-tree involution,
/// the cut tree's attachment part acting as the attached tree.
pub fn composed_involution(
    a: usize,
    phi_prime: &HashMap<ForestTriple, ForestTriple>,
    f: &ForestTriple,
) -> Result<ForestTriple> {
    let (cycle_side, attach_side) = restrict_to_cut(a, f)?;
    let moved = phi_prime
        .get(&attach_side)
        .ok_or_else(|| Error::Domain("attachment triple outside the inner involution".into()))?;
    if moved != &attach_side {
        return combine_at_cut(a, &cycle_side, moved);
    }
    let mut first_trees = Vec::new();
    let mut rest = Vec::new();
    let mut att = Attachment::default();
    for tree in f.trees() {
        if tree.vertices.binary_search(&a).is_ok() {
            att = Attachment {
                vertices: tree.vertices.iter().copied().filter(|&w| w > a).collect(),
                edge_ranks: tree.edge_ranks.iter().copied().filter(|&r| r >= a).collect(),
            };
            first_trees.push(tree.clone());
        } else if tree.vertices[0] > a {
            rest.push(tree.clone());
        } else {
            first_trees.push(tree.clone());
        }
    }
    let tuple = CycleTreeFt::from_forest_triple(a, &att, &ForestTriple::new(first_trees))?;
    let image = tuple.involute();
    image.validate()?;
    let mut trees = image.to_forest_triple(&att).trees().to_vec();
    trees.extend(rest);
    Ok(ForestTriple::new(trees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest_triples::{csf_forest_triples, csf_from_triples, enumerate_forest_triples};
    use crate::graph::LabeledGraph;
    use crate::involution::cycle_involution;
    use crate::{Composition, ESym, Int};
    use std::collections::HashSet;

    #[test]
    fn cut_tree_splits_into_prefix_and_suffix_shapes() {
        // six-cycle glued to a clique chain; the cut tree wraps the cycle
        // through vertex 1 and reaches two vertices of the cliques
        let cut = TreeTriple {
            vertices: vec![1, 4, 5, 6, 9, 10],
            edge_ranks: vec![3, 4, 5, 8, 12],
            alpha: Composition::new(vec![5, 1]),
            root: 5,
        };
        let f = ForestTriple::new(vec![cut]);
        let (cycle_side, attach_side) = restrict_to_cut(6, &f).unwrap();
        let c = cycle_side.min_triple();
        assert_eq!(c.vertices, vec![1, 4, 5, 6]);
        assert_eq!(c.edge_ranks, vec![3, 4, 5]);
        assert_eq!(c.alpha, Composition::new(vec![4]));
        assert_eq!(c.root, 5, "the root rides along even past the shortened part");
        let t = attach_side.min_triple();
        assert_eq!(t.vertices, vec![1, 4, 5]);
        assert_eq!(t.edge_ranks, vec![2, 6]);
        assert_eq!(t.alpha, Composition::new(vec![2, 1]));
        assert_eq!(t.root, 1);
        assert_eq!(combine_at_cut(6, &cycle_side, &attach_side).unwrap(), f);
    }

    #[test]
    fn restriction_round_trips_and_lands_in_both_domains() {
        for (a, gp) in [(4, LabeledGraph::cycle(3)), (3, LabeledGraph::clique(3))] {
            let g = LabeledGraph::cycle(a).graph_sum(&gp).unwrap();
            let domain = enumerate_forest_triples(&g, 1 << 22).unwrap();
            let attach_domain: HashSet<ForestTriple> =
                enumerate_forest_triples(&gp, 1 << 22).unwrap().into_iter().collect();
            for f in &domain {
                let (cycle_side, attach_side) = restrict_to_cut(a, f).unwrap();
                assert!(
                    attach_domain.contains(&attach_side),
                    "attachment side is not a forest triple of the attachment"
                );
                let c_edges = cycle_side.edge_set();
                assert!(LabeledGraph::cycle(a).is_nbc_forest(&c_edges));
                assert_eq!(&combine_at_cut(a, &cycle_side, &attach_side).unwrap(), f);
            }
        }
    }

    #[test]
    fn derived_pairing_is_a_clean_involution() {
        for g in [LabeledGraph::path(3), LabeledGraph::clique(3), LabeledGraph::cycle(4)] {
            let domain = enumerate_forest_triples(&g, 1 << 22).unwrap();
            let phi = derived_involution(&domain).unwrap();
            let mut census = ESym::zero();
            for f in &domain {
                let image = &phi[f];
                assert_eq!(&phi[image], f);
                assert_eq!(image.type_(), f.type_());
                assert_eq!(image.min_triple().alpha.first(), f.min_triple().alpha.first());
                assert_eq!(image.min_triple().root, f.min_triple().root);
                if image == f {
                    assert_eq!(f.sign(), 1);
                    assert!(f.is_unit());
                    census = census.add(&ESym::term(f.type_(), Int::from(1))).unwrap();
                } else {
                    assert_eq!(image.sign(), -f.sign());
                }
            }
            assert_eq!(census, csf_forest_triples(&g));
        }
    }

    #[test]
    fn composed_involution_extends_across_the_cut() {
        for (a, gp) in [
            (3, LabeledGraph::cycle(3)),
            (4, LabeledGraph::cycle(3)),
            (3, LabeledGraph::clique(3)),
            (3, LabeledGraph::path(3)),
            (4, LabeledGraph::path(2)),
        ] {
            let g = LabeledGraph::cycle(a).graph_sum(&gp).unwrap();
            let inner = enumerate_forest_triples(&gp, 1 << 22).unwrap();
            let phi_prime = derived_involution(&inner).unwrap();
            let domain = enumerate_forest_triples(&g, 1 << 22).unwrap();
            let index: HashSet<&ForestTriple> = domain.iter().collect();
            let mut fixed = Vec::new();
            for f in &domain {
                let image = composed_involution(a, &phi_prime, f).unwrap();
                assert!(index.contains(&image), "image left the domain: {image:?}");
                assert_eq!(image.type_(), f.type_());
                assert_eq!(image.min_triple().alpha.first(), f.min_triple().alpha.first());
                assert_eq!(image.min_triple().root, f.min_triple().root);
                let back = composed_involution(a, &phi_prime, &image).unwrap();
                assert_eq!(&back, f);
                if &image == f {
                    assert_eq!(f.sign(), 1);
                    assert!(f.is_unit());
                    fixed.push(f.clone());
                } else {
                    assert_eq!(image.sign(), -f.sign());
                }
            }
            assert_eq!(csf_from_triples(&fixed), csf_forest_triples(&g));
        }
    }

    #[test]
    fn cycle_involution_slots_in_as_the_inner_map() {
        let (a, b) = (4, 3);
        let gp = LabeledGraph::cycle(b);
        let g = LabeledGraph::cycle(a).graph_sum(&gp).unwrap();
        let inner = enumerate_forest_triples(&gp, 1 << 22).unwrap();
        let phi_prime: HashMap<ForestTriple, ForestTriple> = inner
            .iter()
            .map(|f| (f.clone(), cycle_involution(b, f).unwrap()))
            .collect();
        let domain = enumerate_forest_triples(&g, 1 << 22).unwrap();
        let mut fixed = Vec::new();
        for f in &domain {
            let image = composed_involution(a, &phi_prime, f).unwrap();
            let back = composed_involution(a, &phi_prime, &image).unwrap();
            assert_eq!(&back, f);
            if &image == f {
                fixed.push(f.clone());
            }
        }
        assert_eq!(csf_from_triples(&fixed), crate::formulas::two_cycle_csf(a, b));
    }
}
