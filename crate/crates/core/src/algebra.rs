//! Compositions, partitions, and exact symmetric-function arithmetic in the
//! elementary basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::{domain_err, Result};

/// Exact integer coefficient type.
pub type Int = num_bigint::BigInt;

/// A composition: an ordered sequence of positive parts.
///
/// The empty composition (of 0) is allowed; it shows up as the type of a
/// spanning tree after its first part is removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Panics if any part is zero; compositions have positive parts only.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "composition parts must be positive");
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn single(part: u32) -> Self {
        Composition::new(vec![part])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }

    /// The composition with the part at `idx` removed.
    pub fn remove(&self, idx: usize) -> Composition {
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Composition { parts }
    }

    /// Drops the first part; the empty composition stays empty.
    pub fn drop_first(&self) -> Composition {
        if self.parts.is_empty() {
            self.clone()
        } else {
            self.remove(0)
        }
    }

    /// Drops the last part; the empty composition stays empty.
    pub fn drop_last(&self) -> Composition {
        if self.parts.is_empty() {
            self.clone()
        } else {
            self.remove(self.parts.len() - 1)
        }
    }

    /// Forgets the order of parts.
    pub fn to_partition(&self) -> Partition {
        Partition::new(self.parts.clone())
    }

    /// The unique suffix-shaped composition of `j`: `(k, a_{i+1}, ..., a_m)`
    /// where `(a_i, ..., a_m)` is a suffix of `self` and `1 <= k <= a_i`.
    ///
    /// Errors unless `1 <= j <= sum(self)`.
    pub fn split_last(&self, j: u32) -> Result<Composition> {
        if j == 0 || j > self.sum() {
            return domain_err(format!("split_last: {} not in 1..={}", j, self.sum()));
        }
        let mut remaining = j;
        let mut taken = Vec::new();
        for &p in self.parts.iter().rev() {
            if remaining > p {
                taken.push(p);
                remaining -= p;
            } else {
                taken.push(remaining);
                break;
            }
        }
        taken.reverse();
        Ok(Composition::new(taken))
    }

    /// The unique prefix-shaped composition of `j`: `(a_1, ..., a_{i-1}, k)`
    /// with `1 <= k <= a_i`. Errors unless `1 <= j <= sum(self)`.
    pub fn split_first(&self, j: u32) -> Result<Composition> {
        if j == 0 || j > self.sum() {
            return domain_err(format!("split_first: {} not in 1..={}", j, self.sum()));
        }
        let mut remaining = j;
        let mut taken = Vec::new();
        for &p in self.parts.iter() {
            if remaining > p {
                taken.push(p);
                remaining -= p;
            } else {
                taken.push(remaining);
                break;
            }
        }
        Ok(Composition::new(taken))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Composition::new(parts)
    }
}

/// All compositions of `n`, in descending lexicographic order by parts:
/// `(3), (2,1), (1,2), (1,1,1)`. For `n = 0` the single empty composition.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition { parts: prefix.clone() });
            return;
        }
        for p in (1..=n).rev() {
            prefix.push(p);
            rec(n - p, prefix, out);
            prefix.pop();
        }
    }
    rec(n, &mut prefix, &mut out);
    out
}

/// An integer partition: weakly decreasing positive parts.
///
/// Zero parts supplied by callers are dropped on construction, so formula
/// code can hand in pseudo-parts like `a_1 - 1` without special-casing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Comma-separated label used in JSON output: `"4,2"`, `""` for empty.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a label back, e.g. `"4,2"`; whitespace-free, `""` is empty.
    pub fn parse_label(s: &str) -> Result<Partition> {
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .parse()
                .map_err(|_| crate::Error::Domain(format!("bad partition label {s:?}")))?;
            if p == 0 {
                return domain_err(format!("bad partition label {s:?}"));
            }
            parts.push(p);
        }
        Ok(Partition::new(parts))
    }

    /// Union of parts with another partition (multiset union, re-sorted).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.label())
    }
}

/// An exact integer combination of elementary symmetric functions `e_λ`.
///
/// All stored terms must share one homogeneous degree; the zero element has
/// none. Constants are carried on the empty partition (`e_{} = 1`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ESym {
    terms: BTreeMap<Partition, Int>,
}

impl ESym {
    pub fn zero() -> Self {
        ESym::default()
    }

    /// The constant 1.
    pub fn one() -> Self {
        ESym::term(Partition::empty(), Int::from(1))
    }

    /// The single elementary generator `e_k` (`e_0 = 1`).
    pub fn e(k: u32) -> Self {
        ESym::term(Partition::new(vec![k]), Int::from(1))
    }

    pub fn term(key: Partition, coeff: Int) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        ESym { terms }
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        ESym::term(Partition::empty(), c.into())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous degree, `None` for the zero element.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Partition::sum)
    }

    pub fn coeff(&self, key: &Partition) -> Int {
        self.terms.get(key).cloned().unwrap_or_else(Int::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Int)> {
        self.terms.iter()
    }

    /// Terms in descending lexicographic partition order (display order).
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Partition, &Int)> {
        self.terms.iter().rev()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    fn add_term(&mut self, key: Partition, coeff: Int) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Sum; errors on a degree mismatch between two nonzero operands.
    pub fn add(&self, other: &ESym) -> Result<ESym> {
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) if a != b => {
                return domain_err(format!("degree mismatch in sum: {a} vs {b}"));
            }
            _ => {}
        }
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference; same degree rule as `add`.
    pub fn sub(&self, other: &ESym) -> Result<ESym> {
        self.add(&other.scale(&Int::from(-1)))
    }

    pub fn scale(&self, c: &Int) -> ESym {
        if c.is_zero() {
            return ESym::zero();
        }
        ESym {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Product; `e_λ · e_μ = e_{sort(λ ∪ μ)}`.
    pub fn mul(&self, other: &ESym) -> ESym {
        let mut out = ESym::zero();
        for (ka, ca) in self.terms.iter() {
            for (kb, cb) in other.terms.iter() {
                out.add_term(ka.merge(kb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for ESym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ESym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (key, coeff)) in self.iter_desc().enumerate() {
            let neg = coeff.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -coeff } else { coeff.clone() };
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if key.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == Int::from(1) {
                write!(f, "e_{{{}}}", key.label())?;
            } else {
                write!(f, "{}e_{{{}}}", mag, key.label())?;
            }
        }
        Ok(())
    }
}
