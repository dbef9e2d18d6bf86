//! Brute-force cross-check: expand `X_G` by enumerating proper colorings,
//! and push elementary-basis expressions into the same representation.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{ESym, Int, Partition};
use crate::graph::LabeledGraph;
use crate::{domain_err, Error, Result};

/// Default vertex cap for the coloring oracle.
pub const ORACLE_DEFAULT_MAX_N: usize = 8;

/// A symmetric polynomial in `nvars` variables, stored as orbit totals:
/// for each sorted exponent pattern, the sum of the raw coefficients over
/// every arrangement of that pattern. Working with totals keeps all
/// arithmetic in integers — no dividing by orbit sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSym {
    nvars: usize,
    totals: BTreeMap<Partition, Int>,
}

impl MonomialSym {
    pub fn zero(nvars: usize) -> Self {
        MonomialSym { nvars, totals: BTreeMap::new() }
    }

    /// The constant 1 (the all-zero exponent pattern).
    pub fn one(nvars: usize) -> Self {
        let mut s = Self::zero(nvars);
        s.add_total(Partition::empty(), Int::from(1));
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn totals(&self) -> impl Iterator<Item = (&Partition, &Int)> {
        self.totals.iter()
    }

    pub fn total(&self, pattern: &Partition) -> Int {
        self.totals.get(pattern).cloned().unwrap_or_default()
    }

    fn add_total(&mut self, pattern: Partition, count: Int) {
        use std::collections::btree_map::Entry;
        if count == Int::default() {
            return;
        }
        match self.totals.entry(pattern) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += count;
                if *o.get() == Int::default() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(count);
            }
        }
    }

    fn add_assign(&mut self, other: &MonomialSym) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (p, c) in other.totals.iter() {
            self.add_total(p.clone(), c.clone());
        }
    }

    /// Multiplies by the elementary generator `e_k`.
    ///
    /// Adding `e_k` to a pattern means choosing `k` distinct coordinates and
    /// raising each by one. The number of ways a fixed representative of
    /// pattern `mu` lands on pattern `nu` is the same for every arrangement
    /// of `mu`, so the totals transform linearly with those counts.
    fn mul_e(&self, k: usize) -> MonomialSym {
        let mut out = MonomialSym::zero(self.nvars);
        if k > self.nvars {
            return out;
        }
        for (mu, total) in self.totals.iter() {
            let mut rep = vec![0u32; self.nvars];
            rep[..mu.len()].copy_from_slice(mu.parts());
            for (nu, ways) in bump_patterns(&rep, k) {
                out.add_total(nu, total * Int::from(ways));
            }
        }
        out
    }
}

/// For one representative exponent vector, every pattern reachable by
/// raising `k` distinct coordinates, with multiplicities.
fn bump_patterns(rep: &[u32], k: usize) -> Vec<(Partition, u64)> {
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        rep: &[u32],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        counts: &mut BTreeMap<Partition, u64>,
    ) {
        if chosen.len() == k {
            let mut v = rep.to_vec();
            for &i in chosen.iter() {
                v[i] += 1;
            }
            *counts.entry(Partition::new(v)).or_insert(0) += 1;
            return;
        }
        let need = k - chosen.len();
        for i in start..=rep.len().saturating_sub(need) {
            chosen.push(i);
            rec(rep, k, i + 1, chosen, counts);
            chosen.pop();
        }
    }
    rec(rep, k, 0, &mut chosen, &mut counts);
    counts.into_iter().collect()
}

/// Expands an elementary-basis expression into orbit totals in `nvars`
/// variables. `nvars` must cover the longest index, or parts get lost.
pub fn e_to_monomial(x: &ESym, nvars: usize) -> Result<MonomialSym> {
    if let Some(too_long) = x.iter().map(|(p, _)| p.len()).find(|&l| l > nvars) {
        return domain_err(format!(
            "an index with {too_long} parts does not fit in {nvars} variables"
        ));
    }
    let mut out = MonomialSym::zero(nvars);
    for (lambda, coeff) in x.iter() {
        let mut term = MonomialSym::one(nvars);
        for &part in lambda.parts() {
            term = term.mul_e(part as usize);
        }
        let mut scaled = MonomialSym::zero(nvars);
        for (p, t) in term.totals.iter() {
            scaled.add_total(p.clone(), t * coeff);
        }
        out.add_assign(&scaled);
    }
    Ok(out)
}

/// `X_G` by brute force: every proper coloring with `n` colors, tallied by
/// its color-class-size pattern. Refuses graphs beyond `max_n` vertices.
pub fn csf_coloring_oracle(g: &LabeledGraph, max_n: usize) -> Result<MonomialSym> {
    let n = g.n();
    if n > max_n {
        return Err(Error::Resource(format!(
            "coloring oracle capped at {max_n} vertices, graph has {n}"
        )));
    }
    // Neighbors with smaller labels, checked as each vertex is colored.
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(u, v) in g.edges() {
        earlier[v].push(u);
    }
    fn walk(
        v: usize,
        n: usize,
        earlier: &[Vec<usize>],
        color: &mut [usize],
        class_size: &mut [u32],
        out: &mut MonomialSym,
    ) {
        if v > n {
            let pattern = Partition::new(class_size[1..].to_vec());
            out.add_total(pattern, Int::from(1));
            return;
        }
        'colors: for c in 1..=n {
            for &u in &earlier[v] {
                if color[u] == c {
                    continue 'colors;
                }
            }
            color[v] = c;
            class_size[c] += 1;
            walk(v + 1, n, earlier, color, class_size, out);
            class_size[c] -= 1;
            color[v] = 0;
        }
    }
    // The color of vertex 1 splits the coloring space into independent
    // branches; each tallies on its own and the totals merge by addition.
    let out = (1..=n)
        .into_par_iter()
        .map(|c| {
            let mut color = vec![0usize; n + 1];
            let mut class_size = vec![0u32; n + 1];
            color[1] = c;
            class_size[c] = 1;
            let mut out = MonomialSym::zero(n);
            walk(2, n, &earlier, &mut color, &mut class_size, &mut out);
            out
        })
        .reduce(
            || MonomialSym::zero(n),
            |mut acc, part| {
                acc.add_assign(&part);
                acc
            },
        );
    Ok(out)
}

/// Compares an elementary-basis expression against oracle output.
pub fn matches_oracle(x: &ESym, oracle: &MonomialSym) -> Result<bool> {
    Ok(e_to_monomial(x, oracle.nvars())? == *oracle)
}

/// Positivity verdict with the offending terms spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub positive: bool,
    pub negative_terms: Vec<(Partition, Int)>,
}

/// Collects every negative coefficient of `x`, largest index first.
pub fn positivity(x: &ESym) -> PositivityReport {
    let zero = Int::default();
    let negative_terms: Vec<(Partition, Int)> = x
        .iter_desc()
        .filter(|&(_, c)| *c < zero)
        .map(|(p, c)| (p.clone(), c.clone()))
        .collect();
    PositivityReport { positive: negative_terms.is_empty(), negative_terms }
}
