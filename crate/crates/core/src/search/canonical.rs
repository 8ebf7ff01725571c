use serde::Serialize;

use crate::error::{argument, capacity, Result};
use crate::family::{KSet, SetFamily};
use crate::permutations::for_each_permutation;

/// Largest ground set for which canonical forms are computed (all `n!` relabelings).
pub const CANONICAL_MAX_N: usize = 9;

/// Lexicographically least relabeling of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub members: Vec<KSet>,
    /// `permutation[i]` is the image of element `i + 1`.
    pub permutation: Vec<usize>,
}

impl CanonicalForm {
    pub fn to_family(&self, template: &SetFamily) -> SetFamily {
        SetFamily::new(template.n(), template.declared_k(), self.members.clone()).expect("relabeling preserves validity")
    }
}

/// Minimizes the sorted member list over every permutation of `[n]`.
pub fn canonical_form(fam: &SetFamily) -> Result<CanonicalForm> {
    let n = fam.n();
    if n > CANONICAL_MAX_N {
        return Err(capacity(format!("canonical form enumerates n! relabelings; n = {n} exceeds {CANONICAL_MAX_N}")));
    }
    let members = fam.members();
    let mut best_perm: Vec<usize> = (1..=n).collect();
    let mut best: Vec<KSet> = members.to_vec();
    let mut buf: Vec<KSet> = Vec::with_capacity(members.len());
    for_each_permutation(n, |perm| {
        buf.clear();
        buf.extend(members.iter().map(|m| m.relabel(perm)));
        buf.sort_unstable();
        if buf < best {
            best.clone_from(&buf);
            best_perm.copy_from_slice(perm);
        }
        true
    });
    Ok(CanonicalForm { members: best, permutation: best_perm })
}

/// Whether some relabeling of `[n]` maps `a` onto `b`.
pub fn is_isomorphic(a: &SetFamily, b: &SetFamily) -> Result<bool> {
    if a.n() != b.n() {
        return Err(argument(format!("ground sets differ: {} vs {}", a.n(), b.n())));
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut sa: Vec<usize> = a.members().iter().map(|m| m.len()).collect();
    let mut sb: Vec<usize> = b.members().iter().map(|m| m.len()).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }
    Ok(canonical_form(a)?.members == canonical_form(b)?.members)
}
