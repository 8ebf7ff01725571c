use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CheckReport;
use crate::bounds::binom;
use crate::error::{domain, Result};
use crate::family::{KSet, SetFamily};

/// How the free choices (`H₁` and each blocking set) are made.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchChoice {
    /// Always the first valid member in family order.
    Lexicographic,
    /// A uniformly random valid member, from a seeded generator.
    Seeded(u64),
}

/// One generated sequence. Internal nodes record the member chosen to be
/// disjoint from the sequence's elements; leaves (length `r`) record none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchNode {
    pub sequence: Vec<usize>,
    pub blocker: Option<KSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingRun {
    pub base_family: SetFamily,
    pub r: usize,
    /// Member size of the base family.
    pub p: usize,
    /// The member spawning the length-1 sequences.
    pub first: KSet,
    /// Every generated sequence, in generation order.
    pub nodes: Vec<BranchNode>,
    pub leaves: Vec<Vec<usize>>,
}

fn underlying(seq: &[usize]) -> KSet {
    KSet::from_elements(seq.iter().copied()).expect("sequence elements are in range")
}

pub fn run_branching(base: &SetFamily, r: usize) -> Result<BranchingRun> {
    run_branching_with(base, r, BranchChoice::Lexicographic)
}

/// Grows sequences of distinct elements: start with `(x)` for `x` in one
/// member; while some sequence `S` has length below `r`, pick a member
/// disjoint from its elements and replace `S` by its extensions through
/// that member. With `τ(base) ≥ r` a disjoint member always exists and the
/// process ends with `p^r` sequences of length `r`.
pub fn run_branching_with(base: &SetFamily, r: usize, choice: BranchChoice) -> Result<BranchingRun> {
    if base.is_empty() {
        return Err(domain("branching needs a non-empty base family"));
    }
    let p = base.uniformity().ok_or_else(|| domain("branching base must be uniform"))?;
    if p == 0 {
        return Err(domain("branching base contains the empty set"));
    }
    if r == 0 {
        return Err(domain("branching depth r must be positive"));
    }
    if !base.is_intersecting() {
        return Err(domain("branching base must be intersecting"));
    }
    let tau = base.transversal_number()?;
    if tau < r {
        return Err(domain(format!("precondition fails: transversal number {tau} < r = {r}")));
    }

    let mut rng = match choice {
        BranchChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        BranchChoice::Lexicographic => None,
    };
    let mut pick = |options: Vec<KSet>| -> Option<KSet> {
        match rng.as_mut() {
            Some(rng) => options.choose(rng).copied(),
            None => options.first().copied(),
        }
    };

    let first = pick(base.members().to_vec()).expect("non-empty base");
    let mut nodes: Vec<BranchNode> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for x in first.elements() {
        nodes.push(BranchNode { sequence: vec![x], blocker: None });
        queue.push_back(nodes.len() - 1);
    }
    let mut leaves = Vec::new();
    while let Some(idx) = queue.pop_front() {
        let seq = nodes[idx].sequence.clone();
        if seq.len() == r {
            leaves.push(seq);
            continue;
        }
        let used = underlying(&seq);
        let disjoint: Vec<KSet> = base.members().iter().copied().filter(|m| !m.intersects(used)).collect();
        let blocker = pick(disjoint)
            .ok_or_else(|| domain(format!("no member avoids {used}; transversal number below r")))?;
        nodes[idx].blocker = Some(blocker);
        for y in blocker.elements() {
            let mut next = seq.clone();
            next.push(y);
            nodes.push(BranchNode { sequence: next, blocker: None });
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(BranchingRun { base_family: base.clone(), r, p, first, nodes, leaves })
}

/// Checks that every member of `fam` contains the elements of some leaf
/// sequence, and that each level obeys `|fam^(i)| ≤ p^r C(|X| - r, i - r)`
/// with `X = ∪fam`.
pub fn verify_branching_cover(run: &BranchingRun, fam: &SetFamily) -> CheckReport {
    const NAME: &str = "branching";
    let p = run.p;
    let r = run.r;
    let mut details = vec![format!("p = {p}, r = {r}, {} leaves", run.leaves.len())];

    let expected_leaves = (p as u128).checked_pow(r as u32);
    if expected_leaves != Some(run.leaves.len() as u128) {
        return CheckReport::fail(NAME, format!("{} leaves, expected p^r", run.leaves.len())).with_details(details);
    }
    for node in &run.nodes {
        let s = underlying(&node.sequence);
        if s.len() != node.sequence.len() || node.blocker.is_some_and(|b| b.intersects(s)) {
            return CheckReport::fail(NAME, format!("malformed node {:?}", node.sequence));
        }
    }
    if fam.members().iter().any(|m| m.len() < p) || !run.base_family.members().iter().all(|b| fam.contains(*b)) {
        return CheckReport::fail(NAME, "run was not built from the minimum level of this family").with_details(details);
    }

    let leaf_sets: Vec<KSet> = run.leaves.iter().map(|l| underlying(l)).collect();
    for m in fam.members() {
        if !leaf_sets.iter().any(|l| l.is_subset(*m)) {
            let cx = SetFamily::new(fam.n(), None, vec![*m]).expect("member of a valid family");
            return CheckReport::fail(NAME, format!("member {m} contains no generated sequence"))
                .with_counterexample(cx)
                .with_details(details);
        }
    }

    let x = fam.union().union(run.base_family.union()).len() as i64;
    let weight = binom(p as i64, 1).pow(r as u32);
    for i in p..=fam.rank() {
        let level = fam.level(i).len();
        let bound = &weight * binom(x - r as i64, i as i64 - r as i64);
        details.push(format!("level {i}: {level} <= {bound}"));
        if num_bigint::BigUint::from(level) > bound {
            return CheckReport::fail(NAME, format!("level {i} has {level} members, bound {bound}"))
                .with_counterexample(fam.level(i))
                .with_details(details);
        }
    }
    CheckReport::pass(NAME, "every member contains a leaf sequence; level bounds hold").with_details(details)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_on_y, star};

    fn triangle() -> SetFamily {
        complete_on_y(3, KSet::initial(3), 2).unwrap()
    }

    #[test]
    fn triangle_run_by_hand() {
        let run = run_branching(&triangle(), 2).unwrap();
        assert_eq!(run.leaves, vec![vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 3]]);
        assert_eq!(run.first, KSet::from_elements([1, 2]).unwrap());
        assert!(verify_branching_cover(&run, &triangle()).passed);
    }

    #[test]
    fn star_fails_precondition() {
        let s = star(4, 2, 1).unwrap();
        assert!(matches!(run_branching(&s, 2), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn complete_on_five_gives_27_leaves() {
        let c = complete_on_y(5, KSet::initial(5), 3).unwrap();
        let run = run_branching(&c, 3).unwrap();
        assert_eq!(run.leaves.len(), 27);
        assert!(run.leaves.iter().all(|l| l.len() == 3 && underlying(l).len() == 3));
        assert!(verify_branching_cover(&run, &c).passed);
    }

    #[test]
    fn foreign_member_is_reported() {
        let run = run_branching(&triangle(), 2).unwrap();
        let mut members = triangle().into_members();
        members.push(KSet::from_elements([4, 5]).unwrap());
        let fam = SetFamily::new(5, None, members).unwrap();
        let rep = verify_branching_cover(&run, &fam);
        assert!(!rep.passed);
        assert_eq!(rep.counterexample.unwrap().members(), &[KSet::from_elements([4, 5]).unwrap()]);
    }

    #[test]
    fn seeded_choices_still_cover() {
        let c = complete_on_y(6, KSet::initial(5), 3).unwrap();
        for seed in 0..20 {
            let run = run_branching_with(&c, 3, BranchChoice::Seeded(seed)).unwrap();
            assert_eq!(run.leaves.len(), 27);
            assert!(verify_branching_cover(&run, &c).passed);
        }
    }
}
