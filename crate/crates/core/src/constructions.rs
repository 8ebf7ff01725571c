//! Generators for the named extremal families.

use serde::Serialize;

use crate::error::{argument, range, Result};
use crate::family::{KSet, SetFamily};

/// Named constructions with their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Star { n: usize, k: usize, x: usize },
    HiltonMilner { n: usize, k: usize },
    Ell { n: usize, k: usize, r: usize },
    EllOnY { n: usize, k: usize, y: KSet },
    CompleteOnY { n: usize, k: usize, y: KSet },
    Design2632,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<SetFamily> {
        match *self {
            ConstructionSpec::Star { n, k, x } => star(n, k, x),
            ConstructionSpec::HiltonMilner { n, k } => hilton_milner(n, k),
            ConstructionSpec::Ell { n, k, r } => ell_family(n, k, r),
            ConstructionSpec::EllOnY { n, k, y } => ell_family_on(n, k, y),
            ConstructionSpec::CompleteOnY { n, k, y } => complete_on_y(n, y, k),
            ConstructionSpec::Design2632 => Ok(design_2_6_3_2()),
        }
    }
}

fn filtered(n: usize, k: usize, keep: impl Fn(KSet) -> bool) -> Result<SetFamily> {
    let all = SetFamily::complete(n, k)?;
    let members = all.into_members().into_iter().filter(|s| keep(*s)).collect();
    SetFamily::new(n, Some(k), members)
}

/// All `k`-sets through `x`.
pub fn star(n: usize, k: usize, x: usize) -> Result<SetFamily> {
    if x == 0 || x > n {
        return Err(argument(format!("anchor {x} outside [{n}]")));
    }
    if k == 0 || k > n {
        return Err(range(format!("star needs 1 <= k <= n, got k = {k}, n = {n}")));
    }
    filtered(n, k, |s| s.contains(x))
}

/// `{H : 1 ∈ H, H ∩ [2, k+1] ≠ ∅} ∪ {[2, k+1]}`.
pub fn hilton_milner(n: usize, k: usize) -> Result<SetFamily> {
    if k == 0 || n < k + 1 {
        return Err(range(format!("Hilton-Milner family needs 1 <= k < n, got n = {n}, k = {k}")));
    }
    let base = KSet::interval(2, k + 1);
    filtered(n, k, |s| (s.contains(1) && s.intersects(base)) || s == base)
}

/// All `k`-sets meeting `[2r-1]` in at least `r` points.
pub fn ell_family(n: usize, k: usize, r: usize) -> Result<SetFamily> {
    if r == 0 || r > k {
        return Err(range(format!("need 1 <= r <= k, got r = {r}, k = {k}")));
    }
    if n < 2 * k {
        return Err(range(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    ell_family_on(n, k, KSet::initial(2 * r - 1))
}

/// All `k`-sets meeting the odd-sized set `y` in at least `(|y|+1)/2` points.
pub fn ell_family_on(n: usize, k: usize, y: KSet) -> Result<SetFamily> {
    if y.len().is_multiple_of(2) {
        return Err(argument(format!("base set {y} must have odd size")));
    }
    if !y.is_subset(KSet::initial(n.min(64))) {
        return Err(argument(format!("base set {y} not contained in [{n}]")));
    }
    let r = y.len().div_ceil(2);
    if k == 0 || r > k || k > n {
        return Err(range(format!("need 1 <= r <= k <= n, got r = {r}, k = {k}, n = {n}")));
    }
    filtered(n, k, |s| s.intersection(y).len() >= r)
}

/// All `k`-subsets of `y`, on the ground set `[n]`.
pub fn complete_on_y(n: usize, y: KSet, k: usize) -> Result<SetFamily> {
    if y.len() < k {
        return Err(argument(format!("base set {y} has fewer than {k} elements")));
    }
    if !y.is_subset(KSet::initial(n.min(64))) {
        return Err(argument(format!("base set {y} not contained in [{n}]")));
    }
    SetFamily::new(n, Some(k), y.subsets_of_size(k))
}

/// Blocks of the 2-(6,3,2) design, in canonical labelling.
///
/// Obtained by exhausting all 10-member subfamilies of the triples of [6]
/// with every pair covered exactly twice; `tests::design_regenerates`
/// repeats that search.
const DESIGN_2_6_3_2: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 5],
    [1, 4, 6],
    [1, 5, 6],
    [2, 3, 6],
    [2, 4, 5],
    [2, 5, 6],
    [3, 4, 5],
    [3, 4, 6],
];

/// The unique (up to isomorphism) 3-uniform family on [6] covering every pair exactly twice.
pub fn design_2_6_3_2() -> SetFamily {
    let members = DESIGN_2_6_3_2
        .iter()
        .map(|b| KSet::from_elements(b.iter().copied()).expect("valid block"))
        .collect();
    SetFamily::new(6, Some(3), members).expect("valid design")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{canonical_form, is_isomorphic};

    fn set(xs: &[usize]) -> KSet {
        KSet::from_elements(xs.iter().copied()).unwrap()
    }

    #[test]
    fn star_sizes() {
        assert_eq!(star(6, 3, 1).unwrap().len(), 10);
        assert_eq!(star(4, 1, 2).unwrap().members(), &[set(&[2])]);
        assert_eq!(star(7, 3, 1).unwrap().shadow_degree().unwrap(), 1);
        assert!(star(4, 2, 5).is_err());
    }

    #[test]
    fn hilton_milner_sizes() {
        assert_eq!(hilton_milner(7, 3).unwrap().len(), 13);
        assert_eq!(hilton_milner(6, 3).unwrap().len(), 10);
        for (n, k) in [(7, 3), (8, 3), (9, 4)] {
            let h = hilton_milner(n, k).unwrap();
            assert!(h.is_intersecting());
            assert_eq!(h.shadow_degree().unwrap(), 1);
        }
        // at k = 2 the family is a triangle
        assert_eq!(hilton_milner(5, 2).unwrap().shadow_degree().unwrap(), 2);
        assert!(hilton_milner(3, 3).is_err());
    }

    #[test]
    fn ell_sizes() {
        assert_eq!(ell_family(6, 3, 2).unwrap().len(), 10);
        assert_eq!(ell_family(7, 3, 2).unwrap().len(), 13);
        assert_eq!(ell_family(8, 3, 3).unwrap(), complete_on_y(8, KSet::initial(5), 3).unwrap());
        assert_eq!(ell_family(6, 3, 2).unwrap(), ell_family_on(6, 3, KSet::initial(3)).unwrap());
        assert!(matches!(ell_family_on(6, 3, set(&[1, 2])), Err(crate::Error::Argument(_))));
        assert!(ell_family(5, 3, 2).is_err());
    }

    #[test]
    fn complete_examples() {
        let c = complete_on_y(5, KSet::initial(5), 3).unwrap();
        assert_eq!(c.len(), 10);
        assert_eq!(c.shadow_degree().unwrap(), 3);
        assert_eq!(complete_on_y(3, KSet::initial(3), 3).unwrap().members(), &[set(&[1, 2, 3])]);
        for k in 1..=5 {
            let c = complete_on_y(2 * k - 1, KSet::initial(2 * k - 1), k).unwrap();
            assert!(c.is_intersecting());
            assert_eq!(c.shadow_degree().unwrap(), k);
        }
        assert!(complete_on_y(5, set(&[1, 2]), 3).is_err());
    }

    #[test]
    fn design_properties() {
        let d = design_2_6_3_2();
        assert_eq!(d.len(), 10);
        assert!(d.is_intersecting());
        for p in KSet::initial(6).subsets_of_size(2) {
            assert_eq!(d.codegree(p).unwrap(), 2);
        }
        assert_eq!(canonical_form(&d).unwrap().members, d.members().to_vec());
    }

    // Exhaust all 10-subsets of ([6] choose 3) with every pair codegree 2.
    #[test]
    fn design_regenerates() {
        let triples = KSet::initial(6).subsets_of_size(3);
        let pairs = KSet::initial(6).subsets_of_size(2);
        let mut found = Vec::new();
        for mask in 0u32..(1 << 20) {
            if mask.count_ones() != 10 {
                continue;
            }
            let blocks: Vec<KSet> = (0..20).filter(|i| mask >> i & 1 == 1).map(|i| triples[i]).collect();
            let balanced = pairs.iter().all(|p| blocks.iter().filter(|b| p.is_subset(**b)).count() == 2);
            if balanced {
                found.push(SetFamily::new(6, Some(3), blocks).unwrap());
            }
        }
        let intersecting: Vec<&SetFamily> = found.iter().filter(|f| f.is_intersecting()).collect();
        assert_eq!(intersecting.len(), 12);
        let d = design_2_6_3_2();
        for f in &intersecting {
            assert!(is_isomorphic(f, &d).unwrap());
        }
        let least = intersecting.iter().map(|f| canonical_form(f).unwrap().members).min().unwrap();
        assert_eq!(least, d.members().to_vec());
    }

    #[test]
    fn ell_membership_round_trip() {
        for (n, k, r) in [(6, 3, 2), (8, 4, 3), (9, 3, 2)] {
            let l = ell_family(n, k, r).unwrap();
            let base = KSet::initial(2 * r - 1);
            for s in KSet::initial(n).subsets_of_size(k) {
                assert_eq!(l.contains(s), s.intersection(base).len() >= r);
            }
        }
    }
}
