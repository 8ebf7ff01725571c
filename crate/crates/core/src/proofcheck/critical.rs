use super::CheckReport;
use crate::bounds::{katona_style_bound, tuza_bound};
use crate::error::{domain, Result};
use crate::family::{KSet, SetFamily};

// Shrinking `h` to `h - x` keeps the family intersecting iff the smaller set
// is non-empty and still meets every other member.
fn shrink_is_legal(members: &[KSet], h: KSet, x: usize) -> bool {
    let smaller = h.without(x);
    !smaller.is_empty() && members.iter().all(|g| *g == h || g.intersects(smaller))
}

/// Intersecting, and replacing any member `H` by `H - x` (any `x ∈ H`)
/// destroys the intersecting property.
pub fn is_critical(fam: &SetFamily) -> Result<bool> {
    if !fam.is_intersecting() {
        return Err(domain("criticality is only defined for intersecting families"));
    }
    let m = fam.members();
    Ok(m.iter().all(|h| h.elements().all(|x| !shrink_is_legal(m, *h, x))))
}

/// Alternates dropping non-minimal members with the first legal single-element
/// shrink (members in family order, elements increasing) until neither
/// applies. The fixpoint is critical and has rank at most the input's.
pub fn reduce_to_critical(fam: &SetFamily) -> Result<SetFamily> {
    if !fam.is_intersecting() {
        return Err(domain("reduction needs an intersecting family"));
    }
    let mut cur = fam.as_mixed().minimal_members();
    loop {
        let members = cur.members();
        let step = members
            .iter()
            .find_map(|h| h.elements().find(|&x| shrink_is_legal(members, *h, x)).map(|x| (*h, x)));
        let Some((h, x)) = step else {
            return Ok(cur);
        };
        let mut next: Vec<KSet> = members.iter().copied().filter(|g| *g != h).collect();
        next.push(h.without(x));
        cur = SetFamily::from_sets(cur.n(), None, next)?.minimal_members();
    }
}

/// Checks `|∪fam|` against both union bounds for critical families of rank `k`.
pub fn audit_union_bounds(fam: &SetFamily) -> Result<CheckReport> {
    const NAME: &str = "critical-bounds";
    if !is_critical(fam)? {
        return Err(domain("union bounds apply to critical families only"));
    }
    let k = fam.rank() as u64;
    let u = fam.union().len();
    if k <= 1 {
        return Ok(CheckReport::pass(NAME, format!("rank {k}: bounds degenerate, |union| = {u}")));
    }
    let tuza = tuza_bound(k).value;
    let katona = katona_style_bound(k).value;
    let details = vec![format!("rank {k}, |union| = {u}, tuza bound {tuza}, weaker bound {katona}")];
    let big_u = num_bigint::BigUint::from(u);
    if big_u > tuza || big_u > katona {
        return Ok(CheckReport::fail(NAME, format!("|union| = {u} exceeds a bound for rank {k}"))
            .with_counterexample(fam.clone())
            .with_details(details));
    }
    Ok(CheckReport::pass(NAME, format!("|union| = {u} within both bounds for rank {k}")).with_details(details))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_on_y, ell_family};

    fn fam(n: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, None, lists).unwrap()
    }

    #[test]
    fn criticality_examples() {
        assert!(is_critical(&fam(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap());
        assert!(!is_critical(&fam(4, &[&[1, 2], &[1, 3], &[1, 4]])).unwrap());
        assert!(!is_critical(&fam(3, &[&[1, 2, 3]])).unwrap());
        assert!(is_critical(&fam(3, &[&[2]])).unwrap());
        assert!(is_critical(&fam(4, &[&[1, 2], &[3, 4]])).is_err());
    }

    #[test]
    fn minimal_members_of_ell_trace_form_a_triangle() {
        let t = ell_family(7, 3, 2).unwrap().trace(KSet::initial(3));
        let b = t.minimal_members();
        assert_eq!(b.members(), complete_on_y(7, KSet::initial(3), 2).unwrap().members());
        assert!(is_critical(&b).unwrap());
    }

    #[test]
    fn reduction_fixpoints() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(reduce_to_critical(&tri).unwrap().members(), tri.members());
        let s = fam(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_eq!(reduce_to_critical(&s).unwrap().members(), &[KSet::singleton(1)]);
        let l = ell_family(7, 3, 2).unwrap();
        let c = reduce_to_critical(&l).unwrap();
        assert!(is_critical(&c).unwrap());
        assert!(c.rank() <= 3);
    }

    #[test]
    fn union_bound_audit() {
        let tri = fam(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(audit_union_bounds(&tri).unwrap().passed);
        assert!(audit_union_bounds(&fam(1, &[&[1]])).unwrap().passed);
        assert!(audit_union_bounds(&fam(4, &[&[1, 2], &[1, 3], &[1, 4]])).is_err());
    }
}
