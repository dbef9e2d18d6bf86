//! End-to-end checks tying every layer together: closed formulas against
//! enumeration, involution audits with exact fixed-point censuses, and the
//! coloring oracle as independent ground truth.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use forest_csf::algebra::{compositions_of, ESym, Int, Partition};
use forest_csf::forest_triples::{
    csf_forest_triples, csf_from_triples, csf_i_table, csf_prime_from_triples,
    enumerate_forest_triples, ft_prime_members,
};
use forest_csf::formulas::{
    assemble_from_table, b_formula, b_i_formula, chain_csf, cycle_csf, cycle_csf_i, two_cycle_csf,
};
use forest_csf::graph::{ChainSpec, LabeledGraph, SegmentKind};
use forest_csf::involution::{
    audit_involution, combine_at_cut, composed_involution, cycle_involution,
    cycle_tree_involution, restrict_to_cut, CycleFt, CycleTreeHost,
};
use forest_csf::oracle::{csf_coloring_oracle, matches_oracle, positivity};
use forest_csf::ForestTriple;

const CAP: u64 = 10_000_000;

fn esym(terms: &[(&[u32], i64)]) -> ESym {
    let mut out = ESym::zero();
    for &(parts, c) in terms {
        out = out
            .add(&ESym::term(Partition::new(parts.to_vec()), Int::from(c)))
            .unwrap();
    }
    out
}

fn oracle_agrees(x: &ESym, g: &LabeledGraph) -> bool {
    matches_oracle(x, &csf_coloring_oracle(g, g.n()).unwrap()).unwrap()
}

/// All (a, k) with a + k <= 9: every cycle size paired with every
/// attachment size small enough to enumerate exhaustively.
fn transfer_grid() -> Vec<(usize, u32)> {
    (2..=8usize)
        .flat_map(|a| (1..=(9 - a) as u32).map(move |k| (a, k)))
        .collect()
}

#[test]
fn a01_single_edge() {
    let g = LabeledGraph::path(2);
    let members = enumerate_forest_triples(&g, CAP).unwrap();
    assert_eq!(members.len(), 4);
    let x = csf_forest_triples(&g);
    assert_eq!(x, esym(&[(&[2], 2)]));
    assert_eq!(csf_from_triples(&members), x);
    println!("[PASS] a01: the single edge has 4 forest triples and signed sum 2e_2");
}

#[test]
fn a02_six_cycle_three_ways() {
    let g = LabeledGraph::cycle(6);
    let expected = esym(&[(&[6], 30), (&[4, 2], 18), (&[3, 3], 12), (&[2, 2, 2], 2)]);
    assert_eq!(csf_forest_triples(&g), expected);
    assert_eq!(cycle_csf(6), expected);
    assert!(oracle_agrees(&expected, &g));
    println!("[PASS] a02: C6 = 30e_6 + 18e_42 + 12e_33 + 2e_222 by enumeration, closed form, and oracle");
}

/// Distinct five-vertex graphs up to relabeling, as canonical edge lists.
fn five_vertex_classes() -> Vec<Vec<(usize, usize)>> {
    fn perms(pool: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            let v = pool.remove(i);
            cur.push(v);
            perms(pool, cur, out);
            cur.pop();
            pool.insert(i, v);
        }
    }
    let mut relabelings = Vec::new();
    perms(&mut (1..=5).collect(), &mut Vec::new(), &mut relabelings);

    let pairs: Vec<(usize, usize)> = (1..=5usize)
        .flat_map(|u| (u + 1..=5).map(move |v| (u, v)))
        .collect();
    let mut classes: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canonical = relabelings
            .iter()
            .map(|p| {
                let mut image: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| {
                        let (x, y) = (p[u - 1], p[v - 1]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                image.sort_unstable();
                image
            })
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes.into_iter().collect()
}

#[test]
fn a03_all_five_vertex_graphs_match_the_oracle() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let classes = five_vertex_classes();
    assert_eq!(classes.len(), 34);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce57);
    for edges in &classes {
        let g = LabeledGraph::new(5, edges.clone()).unwrap();
        let base = csf_forest_triples(&g);
        assert!(oracle_agrees(&base, &g), "{edges:?}");
        for _ in 0..3 {
            let mut order: Vec<usize> = (0..g.m()).collect();
            order.shuffle(&mut rng);
            let h = g.with_edge_order(&order).unwrap();
            assert_eq!(csf_forest_triples(&h), base, "{edges:?} order {order:?}");
        }
    }
    println!("[PASS] a03: all 34 five-vertex graphs match the oracle under 3 shuffled edge orders each");
}

#[test]
fn a04_cycle_involution_audit_and_fixed_point_counts() {
    for a in 2..=8usize {
        let domain = enumerate_forest_triples(&LabeledGraph::cycle(a), CAP).unwrap();
        let report = audit_involution(&domain, |f| cycle_involution(a, f));
        assert!(report.is_clean(), "C_{a}: {:?}", report.violations);

        // Read each fixed point as a composition of a: the arc holding
        // vertex 1 first, then the plain arcs in cyclic order.
        let mut tally: HashMap<Vec<u32>, u64> = HashMap::new();
        for f in &report.fixed {
            let t = CycleFt::from_forest_triple(a, f).unwrap();
            let plains = &t.entries[..t.entries.len() - 1];
            let mut beta = vec![t.entries.last().unwrap().size()];
            beta.extend(plains.iter().map(|e| e.size()));
            *tally.entry(beta).or_insert(0) += 1;
        }
        let mut total = 0;
        for beta in compositions_of(a as u32) {
            let parts = beta.parts();
            let expected: u64 =
                parts[0] as u64 * parts.iter().map(|&p| (p - 1) as u64).product::<u64>();
            assert_eq!(
                tally.get(parts).copied().unwrap_or(0),
                expected,
                "C_{a} composition {parts:?}"
            );
            total += expected;
        }
        assert_eq!(total as usize, report.fixed_points(), "C_{a}");
        assert_eq!(report.fixed_census().unwrap(), cycle_csf(a), "C_{a}");
    }
    println!("[PASS] a04: cycle audits clean for a = 2..8; fixed points per composition match b1(b1-1)...(bl-1)");
}

#[test]
fn a05_cycle_tree_audit_and_transfer_slices() {
    for (a, k) in transfer_grid() {
        for u in [LabeledGraph::path(k as usize), LabeledGraph::star(k as usize)] {
            let host = CycleTreeHost::new(a, u.clone()).unwrap();
            let (_, members) = ft_prime_members(a, &u, CAP).unwrap();
            let report = audit_involution(&members, |f| cycle_tree_involution(&host, f));
            assert!(report.is_clean(), "(a,k)=({a},{k}): {:?}", report.violations);
            assert_eq!(csf_from_triples(&members), b_formula(a, k), "(a,k)=({a},{k})");

            for i in 1..=a as u32 + k - 1 {
                let slice: Vec<ForestTriple> = members
                    .iter()
                    .filter(|f| {
                        let min = f.min_triple();
                        min.alpha.first() == Some(i) && min.root == 1
                    })
                    .cloned()
                    .collect();
                let b = b_i_formula(a, k, i);
                assert_eq!(csf_prime_from_triples(&slice), b, "(a,k,i)=({a},{k},{i})");
                assert!(b.is_nonneg(), "(a,k,i)=({a},{k},{i})");
                if i == k {
                    assert!(b.is_zero(), "(a,k)=({a},{k}) at i=k");
                }
            }
        }
    }
    println!("[PASS] a05: cycle+tree audits clean on all (a,k) with a+k<=9, both shapes; B and all B^(i) slices match, nonnegative, vanish at i=k");
}

#[test]
fn a06_attachment_shape_does_not_matter() {
    for (a, k) in transfer_grid() {
        let (_, path_members) = ft_prime_members(a, &LabeledGraph::path(k as usize), CAP).unwrap();
        let (_, star_members) = ft_prime_members(a, &LabeledGraph::star(k as usize), CAP).unwrap();
        assert_eq!(
            csf_from_triples(&path_members),
            csf_from_triples(&star_members),
            "(a,k)=({a},{k})"
        );
    }
    println!("[PASS] a06: B_ak is identical for path and star attachments at every (a,k) with a+k<=9");
}

#[test]
fn a07_square_plus_triangle_four_ways() {
    let expected = esym(&[(&[6], 36), (&[5, 1], 24), (&[4, 2], 20), (&[3, 2, 1], 4)]);
    let g = LabeledGraph::cycle(4)
        .graph_sum(&LabeledGraph::cycle(3))
        .unwrap();
    assert_eq!(two_cycle_csf(4, 3), expected);
    let mut composed = ESym::zero();
    for k in 1..=3u32 {
        composed = composed
            .add(&cycle_csf_i(3, k).mul(&b_formula(4, k)))
            .unwrap();
    }
    assert_eq!(composed, expected);
    assert_eq!(csf_forest_triples(&g), expected);
    assert!(oracle_agrees(&expected, &g));
    println!("[PASS] a07: C4+C3 = 36e_6 + 24e_51 + 20e_42 + 4e_321 by closed form, composition, enumeration, and oracle");
}

#[test]
fn a08_slice_reassembly() {
    let mut graphs: Vec<LabeledGraph> = (2..=8).map(LabeledGraph::cycle).collect();
    graphs.extend([
        LabeledGraph::cycle(4).graph_sum(&LabeledGraph::cycle(3)).unwrap(),
        LabeledGraph::cycle(3).graph_sum(&LabeledGraph::cycle(3)).unwrap(),
        LabeledGraph::cycle(3).graph_sum(&LabeledGraph::clique(3)).unwrap(),
        LabeledGraph::clique(5),
        "C2+C4+C3".parse::<ChainSpec>().unwrap().to_graph().unwrap(),
        negative_witness(),
        positive_witness(),
    ]);
    for g in &graphs {
        let table = csf_i_table(g);
        assert_eq!(assemble_from_table(&table), csf_forest_triples(g), "{g:?}");
    }
    for (a, k) in transfer_grid() {
        let table: Vec<ESym> = (0..=(a as u32 + k - 1))
            .map(|i| if i == 0 { ESym::zero() } else { b_i_formula(a, k, i) })
            .collect();
        assert_eq!(assemble_from_table(&table), b_formula(a, k), "(a,k)=({a},{k})");
    }
    println!("[PASS] a08: X = sum_i i e_i X^(i) on {} graphs and B = sum_i i e_i B^(i) on the full (a,k) grid", graphs.len());
}

/// Every chain over the given segment kinds with at most `max_vertices`
/// vertices; sizes start at 2 so each segment adds at least one vertex.
fn all_chains(kinds: &[SegmentKind], max_vertices: usize) -> Vec<ChainSpec> {
    fn rec(
        kinds: &[SegmentKind],
        left: usize,
        segments: &mut Vec<(SegmentKind, usize)>,
        out: &mut Vec<ChainSpec>,
    ) {
        if !segments.is_empty() {
            out.push(ChainSpec { segments: segments.clone() });
        }
        for add in 1..=left {
            for &kind in kinds {
                segments.push((kind, add + 1));
                rec(kinds, left - add, segments, out);
                segments.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(kinds, max_vertices - 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn a09_chains_are_e_positive_and_cross_checked() {
    let cycle_chains = all_chains(&[SegmentKind::Cycle], 10);
    assert_eq!(cycle_chains.len(), 511);
    let mixed_chains = all_chains(&[SegmentKind::Cycle, SegmentKind::Clique], 9);
    assert_eq!(mixed_chains.len(), 6560);

    // The coloring oracle visits every proper coloring, so its cost grows
    // like (n-1)^n: fine through seven vertices, half a second each at
    // eight. Every chain is checked against direct enumeration; the oracle
    // additionally covers all chains through seven vertices and a fixed
    // eight-vertex sample of both segment kinds.
    let check = |spec: &ChainSpec| {
        let g = spec.to_graph().unwrap();
        let x = chain_csf(spec).unwrap();
        assert!(x.is_nonneg(), "{spec}");
        assert_eq!(x, csf_forest_triples(&g), "{spec}");
        if g.n() <= 7 {
            assert!(oracle_agrees(&x, &g), "{spec}");
        }
    };
    cycle_chains.par_iter().for_each(check);
    mixed_chains.par_iter().for_each(check);

    for text in ["C8", "C2+C7", "C4+C5", "C3+C3+C4", "K8", "K2+C7", "K4+K5", "C4+K5"] {
        let spec: ChainSpec = text.parse().unwrap();
        let g = spec.to_graph().unwrap();
        assert!(oracle_agrees(&chain_csf(&spec).unwrap(), &g), "{spec}");
    }
    println!("[PASS] a09: 511 cycle chains (<=10 vertices) and 6560 cycle+clique chains (<=9) are e-positive and match enumeration; oracle through 7 vertices plus 8 eight-vertex samples");
}

/// A square with a pendant edge and a triangle attached at two opposite
/// (non-adjacent) corners.
fn negative_witness() -> LabeledGraph {
    LabeledGraph::new(
        7,
        vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 2), (4, 6), (6, 7), (7, 4)],
    )
    .unwrap()
}

/// A five-cycle with a pendant edge and a two-edge path attached at two
/// non-adjacent vertices — non-adjacent cuts, yet e-positive.
fn positive_witness() -> LabeledGraph {
    LabeledGraph::new(
        8,
        vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2), (7, 5), (7, 8)],
    )
    .unwrap()
}

#[test]
fn a10_nonadjacent_attachment_witnesses() {
    let g = negative_witness();
    let x = csf_forest_triples(&g);
    let report = positivity(&x);
    assert!(!report.positive);
    assert_eq!(
        report.negative_terms,
        vec![(Partition::new(vec![3, 2, 2]), Int::from(-8))]
    );
    assert!(oracle_agrees(&x, &g));

    // The same three pieces joined in a row stay e-positive...
    let row = chain_csf(&"C2+C4+C3".parse::<ChainSpec>().unwrap()).unwrap();
    assert!(row.is_nonneg());
    // ...and non-adjacent attachment points alone do not force a
    // negative coefficient.
    let h = positive_witness();
    let y = csf_forest_triples(&h);
    assert!(y.is_nonneg());
    assert!(oracle_agrees(&y, &h));
    println!("[PASS] a10: non-adjacent witness has exactly one negative coefficient, -8 on e_322; the positive witness is e-positive; both match the oracle");
}

#[test]
fn a11_composed_involution_over_a_second_cycle() {
    for (a, b) in [(3usize, 3usize), (4, 3)] {
        let inner = enumerate_forest_triples(&LabeledGraph::cycle(b), CAP).unwrap();
        let mut phi: HashMap<ForestTriple, ForestTriple> = HashMap::new();
        for f in &inner {
            phi.insert(f.clone(), cycle_involution(b, f).unwrap());
        }

        let g = LabeledGraph::cycle(a)
            .graph_sum(&LabeledGraph::cycle(b))
            .unwrap();
        let domain = enumerate_forest_triples(&g, CAP).unwrap();
        for f in &domain {
            let (cycle_side, attach_side) = restrict_to_cut(a, f).unwrap();
            assert_eq!(&combine_at_cut(a, &cycle_side, &attach_side).unwrap(), f);
        }

        let report = audit_involution(&domain, |f| composed_involution(a, &phi, f));
        assert!(report.is_clean(), "C{a}+C{b}: {:?}", report.violations);
        assert_eq!(report.fixed_census().unwrap(), two_cycle_csf(a, b), "C{a}+C{b}");
    }
    println!("[PASS] a11: composed involution audits clean on C3+C3 and C4+C3; restrict/combine round-trips; fixed census equals the closed form");
}
