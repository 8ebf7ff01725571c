use serde::Serialize;

use super::CheckReport;
use crate::error::{capacity, domain, Result};
use crate::family::{KSet, SetFamily};

/// Largest `|∪fam|` searched for a minimum support.
pub const SUPPORT_MAX_UNION: usize = 24;

/// Two members whose traces on the support meet exactly in `element`.
/// `first == second` when a trace is the singleton itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportWitness {
    pub element: usize,
    pub first: KSet,
    pub second: KSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub support: KSet,
    pub witnesses: Vec<SupportWitness>,
}

fn witness_for(fam: &SetFamily, x: KSet, element: usize) -> Option<SupportWitness> {
    let target = KSet::singleton(element);
    let m = fam.members();
    (0..m.len())
        .flat_map(|a| (a..m.len()).map(move |b| (a, b)))
        .find(|&(a, b)| m[a].intersection(m[b]).intersection(x) == target)
        .map(|(a, b)| SupportWitness { element, first: m[a], second: m[b] })
}

/// The lexicographically least support of minimum size, with a witness pair
/// for every element. Minimality forces the witnesses: if no two traces met
/// exactly in `x`, dropping `x` would leave a smaller support.
pub fn minimal_support(fam: &SetFamily) -> Result<SupportReport> {
    if !fam.is_intersecting() {
        return Err(domain("supports are only defined for intersecting families"));
    }
    let union = fam.union();
    if union.len() > SUPPORT_MAX_UNION {
        return Err(capacity(format!("|union| = {} exceeds {SUPPORT_MAX_UNION} for support search", union.len())));
    }
    let support = (0..=union.len())
        .find_map(|s| union.subsets_of_size(s).into_iter().find(|x| fam.is_support(*x)))
        .expect("the union itself is a support of an intersecting family");
    let witnesses = support
        .elements()
        .map(|e| witness_for(fam, support, e).ok_or_else(|| domain(format!("no witness pair at {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SupportReport { support, witnesses })
}

/// Recomputes the support claims independently: the reported set is a
/// support, no smaller subset of the union is, and each witness is valid.
pub fn verify_minimal_support(fam: &SetFamily) -> Result<CheckReport> {
    const NAME: &str = "support";
    let rep = minimal_support(fam)?;
    let x = rep.support;
    if !fam.is_support(x) {
        return Ok(CheckReport::fail(NAME, format!("{x} is not a support")));
    }
    let union = fam.union();
    for s in 0..x.len() {
        if let Some(smaller) = union.subsets_of_size(s).into_iter().find(|y| fam.is_support(*y)) {
            return Ok(CheckReport::fail(NAME, format!("{smaller} is a smaller support than {x}")));
        }
    }
    for w in &rep.witnesses {
        if w.first.intersection(w.second).intersection(x) != KSet::singleton(w.element) {
            return Ok(CheckReport::fail(NAME, format!("bad witness at {}", w.element)));
        }
    }
    let details = rep
        .witnesses
        .iter()
        .map(|w| format!("{}: {} and {}", w.element, w.first, w.second))
        .collect();
    Ok(CheckReport::pass(NAME, format!("minimum support {x} of size {}", x.len())).with_details(details))
}
