//! Closed formulas: cycles, the `B` transfer series for a cycle with an
//! attachment, two glued cycles, and chains of cycles and cliques.

use crate::algebra::{ESym, Int, Partition};
use crate::forest_triples::{csf_from_triples, csf_i_table, ft_prime_members_of};
use crate::graph::{ChainSpec, LabeledGraph, SegmentKind};
use crate::Result;

/// Compositions of `n` whose parts all reach per-position minimums:
/// position `j` must be at least `head_mins[j]`, later positions at least
/// `tail_min`. Visits each as a slice.
fn visit_bounded_compositions(
    n: u32,
    head_mins: &[u32],
    tail_min: u32,
    visit: &mut impl FnMut(&[u32]),
) {
    fn rec(
        left: u32,
        pos: usize,
        head_mins: &[u32],
        tail_min: u32,
        prefix: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if left == 0 {
            visit(prefix);
            return;
        }
        let min = head_mins.get(pos).copied().unwrap_or(tail_min);
        for p in min..=left {
            prefix.push(p);
            rec(left - p, pos + 1, head_mins, tail_min, prefix, visit);
            prefix.pop();
        }
    }
    rec(n, 0, head_mins, tail_min, &mut Vec::new(), visit);
}

fn product_minus_one(parts: &[u32]) -> i128 {
    parts.iter().map(|&p| i128::from(p) - 1).product()
}

fn add_term(total: &mut ESym, parts: Vec<u32>, coeff: i128) {
    if coeff == 0 {
        return;
    }
    let term = ESym::term(Partition::new(parts), Int::from(coeff));
    *total = total.add(&term).expect("homogeneous formula");
}

/// `X_{C_a}`: over compositions `alpha` of `a`, the term
/// `alpha_1 (alpha_1 - 1)(alpha_2 - 1)...(alpha_l - 1) e_{sort(alpha)}`.
/// Compositions with a part 1 vanish, so only parts `>= 2` are visited.
pub fn cycle_csf(a: usize) -> ESym {
    assert!(a >= 2);
    let mut total = ESym::zero();
    visit_bounded_compositions(a as u32, &[], 2, &mut |alpha| {
        let coeff = i128::from(alpha[0]) * product_minus_one(alpha);
        add_term(&mut total, alpha.to_vec(), coeff);
    });
    total
}

/// `X^(i)_{C_a}`: `(i - 1)` times the sum over compositions `alpha` of
/// `a - i` of `(alpha_1 - 1)...(alpha_l - 1) e_{sort(alpha)}`.
pub fn cycle_csf_i(a: usize, i: u32) -> ESym {
    assert!(a >= 2);
    if i < 2 || i as usize > a {
        return ESym::zero();
    }
    let mut total = ESym::zero();
    visit_bounded_compositions(a as u32 - i, &[], 2, &mut |alpha| {
        let coeff = (i128::from(i) - 1) * product_minus_one(alpha);
        add_term(&mut total, alpha.to_vec(), coeff);
    });
    total
}

/// The transfer series `B_{a,k}`: over compositions `alpha` of `a + k`
/// with at least two parts, `alpha_1 <= k <= alpha_2`, the term
/// `(alpha_2 - alpha_1 + 1)(alpha_1 + alpha_2 - k - 1)(alpha_3 - 1)...`
/// times `e` indexed by `alpha` with its first part lowered by one.
pub fn b_formula(a: usize, k: u32) -> ESym {
    assert!(a >= 2 && k >= 1);
    let n = a as u32 + k;
    let mut total = ESym::zero();
    for a1 in 1..=k {
        for a2 in k..=n - a1 {
            visit_bounded_compositions(n - a1 - a2, &[], 2, &mut |rest| {
                let coeff = (i128::from(a2) - i128::from(a1) + 1)
                    * (i128::from(a1) + i128::from(a2) - i128::from(k) - 1)
                    * product_minus_one(rest);
                let mut parts = vec![a1 - 1, a2];
                parts.extend_from_slice(rest);
                add_term(&mut total, parts, coeff);
            });
        }
    }
    total
}

/// `B^(i)_{a,k}`, the first-part slices of the transfer series.
///
/// For `i < k`: over `alpha` of `a + k - i - 1` with `alpha_1 >= k`, the
/// term `(k - i)(alpha_2 - 1)... e_{sort(alpha)}`. For `i > k`: over
/// `alpha` of `a + k - i` with `alpha_1 <= k`, the term
/// `(i - k)(alpha_2 - 1)... e` with the first part lowered by one.
/// `B^(k)_{a,k}` is zero.
pub fn b_i_formula(a: usize, k: u32, i: u32) -> ESym {
    assert!(a >= 2 && k >= 1 && i >= 1);
    let mut total = ESym::zero();
    if i < k {
        let n = a as u32 + k - i - 1;
        for a1 in k..=n {
            visit_bounded_compositions(n - a1, &[], 2, &mut |rest| {
                let coeff = (i128::from(k) - i128::from(i)) * product_minus_one(rest);
                let mut parts = vec![a1];
                parts.extend_from_slice(rest);
                add_term(&mut total, parts, coeff);
            });
        }
    } else {
        if i as usize >= a + k as usize {
            return ESym::zero();
        }
        let n = a as u32 + k - i;
        for a1 in 1..=k.min(n) {
            visit_bounded_compositions(n - a1, &[], 2, &mut |rest| {
                let coeff = (i128::from(i) - i128::from(k)) * product_minus_one(rest);
                let mut parts = vec![a1 - 1];
                parts.extend_from_slice(rest);
                add_term(&mut total, parts, coeff);
            });
        }
    }
    total
}

/// `X` of two cycles sharing one vertex: over compositions `alpha` of `a`
/// and `beta` of `b + alpha_1` with at least two parts and
/// `beta_1 <= alpha_1 <= beta_2`, the term
/// `(alpha_1 - 1)...(alpha_l - 1)(beta_2 - beta_1 + 1)(beta_1 + beta_2 - alpha_1 - 1)(beta_3 - 1)...`
/// with `e` indexed by the leftover parts of both and `beta_1 - 1`.
pub fn two_cycle_csf(a: usize, b: usize) -> ESym {
    assert!(a >= 2 && b >= 2);
    let mut total = ESym::zero();
    visit_bounded_compositions(a as u32, &[], 2, &mut |alpha| {
        let a1 = alpha[0];
        let alpha_factor = product_minus_one(alpha);
        let m = b as u32 + a1;
        for b1 in 1..=a1 {
            for b2 in a1..=m - b1 {
                visit_bounded_compositions(m - b1 - b2, &[], 2, &mut |rest| {
                    let coeff = alpha_factor
                        * (i128::from(b2) - i128::from(b1) + 1)
                        * (i128::from(b1) + i128::from(b2) - i128::from(a1) - 1)
                        * product_minus_one(rest);
                    let mut parts = alpha[1..].to_vec();
                    parts.push(b1 - 1);
                    parts.push(b2);
                    parts.extend_from_slice(rest);
                    add_term(&mut total, parts, coeff);
                });
            }
        }
    });
    total
}

/// Pushes a table of `X^(k)` values for an attachment through a cycle of
/// size `a`: entry `i` of the result is `sum_k B^(i)_{a,k} X^(k)`.
pub fn attach_cycle_table(a: usize, inner: &[ESym]) -> Vec<ESym> {
    let n_inner = inner.len() - 1;
    let n = a + n_inner - 1;
    let mut out = vec![ESym::zero(); n + 1];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        for (k, x) in inner.iter().enumerate().skip(1) {
            if x.is_zero() {
                continue;
            }
            let b = b_i_formula(a, k as u32, i as u32);
            if b.is_zero() {
                continue;
            }
            *slot = slot.add(&b.mul(x)).expect("homogeneous transfer");
        }
    }
    out
}

/// Reassembles `X` from a table of `X^(i)` slices: `sum_i i e_i X^(i)`.
pub fn assemble_from_table(table: &[ESym]) -> ESym {
    let mut total = ESym::zero();
    for (i, x) in table.iter().enumerate().skip(1) {
        let part = ESym::e(i as u32).scale(&Int::from(i as u64)).mul(x);
        total = total.add(&part).expect("homogeneous");
    }
    total
}

/// `X^(i)` table for a chain of cycles and cliques, built right to left.
///
/// A cycle segment is folded in through the `B` transfer; a clique segment
/// has no transfer formula, so the whole remaining suffix is recomputed by
/// forest-triple enumeration (suffixes are chains too, just smaller).
pub fn chain_csf_i_table(spec: &ChainSpec) -> Result<Vec<ESym>> {
    let segments = &spec.segments;
    let last = segments.len() - 1;
    let mut table = match segments[last] {
        (SegmentKind::Cycle, a) => {
            let mut t = vec![ESym::zero(); a + 1];
            for (i, slot) in t.iter_mut().enumerate().skip(1) {
                *slot = cycle_csf_i(a, i as u32);
            }
            t
        }
        (SegmentKind::Clique, m) => {
            csf_i_table(&ChainSpec { segments: vec![(SegmentKind::Clique, m)] }.to_graph()?)
        }
    };
    for j in (0..last).rev() {
        match segments[j] {
            (SegmentKind::Cycle, a) => {
                table = attach_cycle_table(a, &table);
            }
            (SegmentKind::Clique, _) => {
                let suffix = ChainSpec { segments: segments[j..].to_vec() };
                table = csf_i_table(&suffix.to_graph()?);
            }
        }
    }
    Ok(table)
}

/// `X` for a chain of cycles and cliques.
pub fn chain_csf(spec: &ChainSpec) -> Result<ESym> {
    Ok(assemble_from_table(&chain_csf_i_table(spec)?))
}

/// `B_{A,k}` for an arbitrary head graph `A` attached at its highest
/// vertex: the signed type sum over the same restricted subset of
/// `FT(A + U_k)` used for cycles, by direct enumeration. Specializes to
/// `b_formula` when `A` is a cycle. Experimental: nothing promises
/// positivity for other heads.
pub fn generic_b(head: &LabeledGraph, u: &LabeledGraph, cap: u64) -> Result<ESym> {
    let (_, members) = ft_prime_members_of(head, u, cap)?;
    Ok(csf_from_triples(&members))
}
