//! Mechanical verification of involution axioms over a materialized domain.

use std::collections::HashSet;

use crate::{ESym, ForestTriple, Int, Result};

const MAX_REPORTED: usize = 32;

/// Outcome of checking a map over a full domain of forest triples.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub domain_size: usize,
    pub violations: Vec<String>,
    pub fixed: Vec<ForestTriple>,
}

impl AuditReport {
    pub fn fixed_points(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Signed sum of e_type over the fixed points.
    pub fn fixed_census(&self) -> Result<ESym> {
        let mut sum = ESym::zero();
        for f in &self.fixed {
            sum = sum.add(&ESym::term(f.type_(), Int::from(f.sign())))?;
        }
        Ok(sum)
    }

    /// Signed sum of e over the fixed points' types with one copy of the
    /// first part removed.
    pub fn fixed_census_prime(&self) -> Result<ESym> {
        let mut sum = ESym::zero();
        for f in &self.fixed {
            sum = sum.add(&ESym::term(f.type_prime(), Int::from(f.sign())))?;
        }
        Ok(sum)
    }
}

/// Runs `phi` over every triple in `domain` and checks that it is a
/// type-preserving, first-preserving, sign-reversing involution whose
/// fixed points are positive units. Violations are described in plain
/// text; the first few are kept verbatim.
pub fn audit_involution<F>(domain: &[ForestTriple], phi: F) -> AuditReport
where
    F: Fn(&ForestTriple) -> Result<ForestTriple>,
{
    let index: HashSet<&ForestTriple> = domain.iter().collect();
    let mut violations = Vec::new();
    let mut suppressed = 0usize;
    let mut fixed = Vec::new();
    let mut complain = |msg: String, violations: &mut Vec<String>| {
        if violations.len() < MAX_REPORTED {
            violations.push(msg);
        } else {
            suppressed += 1;
        }
    };
    for f in domain {
        let image = match phi(f) {
            Ok(image) => image,
            Err(e) => {
                complain(format!("map failed on {f:?}: {e}"), &mut violations);
                continue;
            }
        };
        if !index.contains(&image) {
            complain(format!("image of {f:?} leaves the domain: {image:?}"), &mut violations);
            continue;
        }
        if image.type_() != f.type_() {
            complain(format!("type changes under the map: {f:?} -> {image:?}"), &mut violations);
        }
        let (before, after) = (f.min_triple(), image.min_triple());
        if before.alpha.first() != after.alpha.first() || before.root != after.root {
            complain(format!("first block changes under the map: {f:?} -> {image:?}"), &mut violations);
        }
        if &image == f {
            if f.sign() != 1 {
                complain(format!("fixed point with negative sign: {f:?}"), &mut violations);
            }
            if !f.is_unit() {
                complain(format!("fixed point is not a unit: {f:?}"), &mut violations);
            }
            fixed.push(f.clone());
            continue;
        }
        if image.sign() != -f.sign() {
            complain(format!("paired triples share a sign: {f:?} -> {image:?}"), &mut violations);
        }
        match phi(&image) {
            Ok(back) if &back == f => {}
            Ok(back) => complain(
                format!("map is not an involution: {f:?} -> {image:?} -> {back:?}"),
                &mut violations,
            ),
            Err(e) => complain(format!("map failed on image {image:?}: {e}"), &mut violations),
        }
    }
    if suppressed > 0 {
        violations.push(format!("... and {suppressed} more violations"));
    }
    AuditReport { domain_size: domain.len(), violations, fixed }
}
