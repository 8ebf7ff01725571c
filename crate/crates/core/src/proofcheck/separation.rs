//! Permutation counting for pairs of members meeting in a single point.
//!
//! A permutation `(x_1, ..., x_n)` separates `(G, H)` at `i` when, with
//! `x_j = i`, one of the two sets lies in `{x_1..x_j}` and the other in
//! `{x_j..x_n}`.

use num_bigint::BigUint;
use serde::Serialize;

use super::CheckReport;
use crate::bounds::{factorial, separation_count};
use crate::error::{argument, capacity, domain, Result};
use crate::family::{KSet, SetFamily};
use crate::permutations::for_each_permutation;

/// Largest `n` for which all `n!` permutations are enumerated.
pub const SEPARATION_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparationPair {
    pub g: KSet,
    pub h: KSet,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationInstance {
    pub n: usize,
    pub pairs: Vec<SeparationPair>,
}

impl SeparationInstance {
    pub fn new(n: usize, pairs: Vec<SeparationPair>) -> Result<Self> {
        let ground = KSet::initial(n.min(64));
        for p in &pairs {
            if p.g.intersection(p.h) != KSet::singleton(p.element) {
                return Err(argument(format!("{} and {} do not meet exactly in {{{}}}", p.g, p.h, p.element)));
            }
            if !p.g.union(p.h).is_subset(ground) {
                return Err(argument(format!("pair at {} leaves [{n}]", p.element)));
            }
        }
        Ok(SeparationInstance { n, pairs })
    }

    /// One pair per point of `∪fam`: the first two members (in family order)
    /// meeting exactly in that point.
    pub fn from_family(fam: &SetFamily) -> Result<Self> {
        let m = fam.members();
        let mut pairs = Vec::new();
        for x in fam.union().elements() {
            let target = KSet::singleton(x);
            let found = (0..m.len())
                .flat_map(|a| (a + 1..m.len()).map(move |b| (a, b)))
                .find(|&(a, b)| m[a].intersection(m[b]) == target);
            let (a, b) = found.ok_or_else(|| domain(format!("no two members meet exactly in {{{x}}}")))?;
            pairs.push(SeparationPair { g: m[a], h: m[b], element: x });
        }
        SeparationInstance::new(fam.n(), pairs)
    }
}

fn separates(pos: &[usize], pair: &SeparationPair) -> bool {
    let j = pos[pair.element - 1];
    let before = |s: KSet| s.elements().all(|e| pos[e - 1] <= j);
    let after = |s: KSet| s.elements().all(|e| pos[e - 1] >= j);
    (before(pair.g) && after(pair.h)) || (before(pair.h) && after(pair.g))
}

fn positions(perm: &[usize], pos: &mut [usize]) {
    for (j, &x) in perm.iter().enumerate() {
        pos[x - 1] = j;
    }
}

/// Number of permutations of `[n]` separating the given pair, by enumeration.
pub fn separating_permutations(inst: &SeparationInstance, pair_index: usize) -> Result<u64> {
    if inst.n > SEPARATION_MAX_N {
        return Err(capacity(format!("n = {} exceeds {SEPARATION_MAX_N} for permutation enumeration", inst.n)));
    }
    let pair = inst.pairs.get(pair_index).ok_or_else(|| argument(format!("no pair {pair_index}")))?;
    let mut pos = vec![0; inst.n];
    let mut count = 0u64;
    for_each_permutation(inst.n, |perm| {
        positions(perm, &mut pos);
        count += u64::from(separates(&pos, pair));
        true
    });
    Ok(count)
}

/// Compares the enumerated count for `G = [g]`, `H = {g, ..., g+h-1}` with the closed form.
pub fn verify_separation_count(n: usize, g: usize, h: usize) -> Result<CheckReport> {
    let formula = separation_count(n as u64, g as u64, h as u64)?.value;
    let pair = SeparationPair { g: KSet::initial(g), h: KSet::interval(g, g + h - 1), element: g };
    let inst = SeparationInstance::new(n, vec![pair])?;
    let counted = separating_permutations(&inst, 0)?;
    let summary = format!("n = {n}, g = {g}, h = {h}: enumerated {counted}, formula {formula}");
    Ok(if BigUint::from(counted) == formula {
        CheckReport::pass("separation", summary)
    } else {
        CheckReport::fail("separation", summary)
    })
}

/// No permutation separates two recorded pairs; then `pairs · min count ≤ n!`.
pub fn verify_no_double_separation(inst: &SeparationInstance) -> Result<CheckReport> {
    const NAME: &str = "double-separation";
    if inst.n > 8 {
        return Err(capacity(format!("n = {} exceeds 8 for double-separation enumeration", inst.n)));
    }
    let mut pos = vec![0; inst.n];
    let mut counts = vec![0u64; inst.pairs.len()];
    let mut clash: Option<(Vec<usize>, usize, usize)> = None;
    for_each_permutation(inst.n, |perm| {
        positions(perm, &mut pos);
        let hit: Vec<usize> = (0..inst.pairs.len()).filter(|&i| separates(&pos, &inst.pairs[i])).collect();
        for &i in &hit {
            counts[i] += 1;
        }
        if hit.len() >= 2 {
            clash = Some((perm.to_vec(), hit[0], hit[1]));
            return false;
        }
        true
    });
    if let Some((perm, a, b)) = clash {
        let (pa, pb) = (inst.pairs[a], inst.pairs[b]);
        let cx = SetFamily::from_sets(inst.n, None, vec![pa.g, pa.h, pb.g, pb.h])?;
        let mut rep = CheckReport::fail(
            NAME,
            format!("permutation {perm:?} separates the pairs at {} and {}", pa.element, pb.element),
        )
        .with_counterexample(cx);
        rep.permutation = Some(perm);
        return Ok(rep);
    }
    let m = inst.pairs.len() as u64;
    let min = counts.iter().copied().min().unwrap_or(0);
    let total = factorial(inst.n as u64);
    let lhs = BigUint::from(m) * min;
    let details = vec![format!("{m} pairs, min separating count {min}, n! = {total}")];
    if lhs > total {
        return Ok(CheckReport::fail(NAME, format!("{m} * {min} exceeds n!")).with_details(details));
    }
    Ok(CheckReport::pass(NAME, format!("no permutation separates two pairs; {m} * {min} <= {total}")).with_details(details))
}
