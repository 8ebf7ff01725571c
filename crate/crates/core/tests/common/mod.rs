//! Brute-force reference implementations, independent of the library.

#![allow(dead_code)]

use std::collections::HashMap;

/// All `k`-subsets of `[n]` as bitmasks, in increasing mask order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Minimum positive co-degree of a non-empty uniform family given as masks.
pub fn min_codegree(family: &[u32]) -> usize {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &s in family {
        let mut bits = s;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            *counts.entry(s ^ b).or_default() += 1;
            bits ^= b;
        }
    }
    counts.values().copied().min().expect("non-empty family")
}

pub fn pairwise_intersecting(family: &[u32]) -> bool {
    family.iter().all(|a| *a != 0 && family.iter().all(|b| a & b != 0))
}

/// Outcome of enumerating all `2^C(n,k)` subfamilies.
pub struct Exhaustive {
    /// `best[r]`: largest non-empty intersecting family with min co-degree
    /// at least `r`, for `r` in `0..=k+1`.
    pub best: Vec<Option<usize>>,
    /// Every optimal family for each `r` (only filled on request).
    pub optima: Vec<Vec<Vec<u32>>>,
}

pub fn exhaustive(n: usize, k: usize, keep_optima: bool) -> Exhaustive {
    let sets = k_subsets(n, k);
    let m = sets.len();
    assert!(m <= 20, "oracle limited to 20 candidate sets");
    let meets: Vec<u32> = sets
        .iter()
        .map(|a| sets.iter().enumerate().filter(|(_, b)| *a & **b != 0).fold(0, |acc, (j, _)| acc | 1 << j))
        .collect();
    let mut best = vec![None; k + 2];
    let mut optima: Vec<Vec<Vec<u32>>> = vec![Vec::new(); k + 2];
    for sub in 1u32..1 << m {
        if (0..m).any(|i| sub >> i & 1 == 1 && meets[i] & sub != sub) {
            continue;
        }
        let family: Vec<u32> = (0..m).filter(|i| sub >> i & 1 == 1).map(|i| sets[i]).collect();
        let delta = min_codegree(&family);
        let size = family.len();
        for r in 0..=delta.min(k + 1) {
            match best[r] {
                Some(b) if b > size => {}
                Some(b) if b == size => {
                    if keep_optima {
                        optima[r].push(family.clone());
                    }
                }
                _ => {
                    best[r] = Some(size);
                    if keep_optima {
                        optima[r] = vec![family.clone()];
                    }
                }
            }
        }
    }
    Exhaustive { best, optima }
}

/// Every `(n, k)` with `C(n, k) ≤ 20`.
pub fn small_parameter_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=20usize {
        for k in 1..=n {
            if binom(n, k) <= 20 {
                out.push((n, k));
            }
        }
    }
    out
}

pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Smallest number of points meeting every set, by subset enumeration.
pub fn transversal(family: &[u32], n: usize) -> usize {
    (0u32..1 << n)
        .filter(|t| family.iter().all(|s| s & t != 0))
        .map(|t| t.count_ones() as usize)
        .min()
        .expect("the full ground set is a transversal when no member is empty")
}

/// Largest number of pairwise disjoint members, by subfamily enumeration.
pub fn matching(family: &[u32]) -> usize {
    let m = family.len();
    (0u32..1 << m)
        .filter(|sub| {
            let mut union = 0u32;
            for (i, &s) in family.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    if union & s != 0 {
                        return false;
                    }
                    union |= s;
                }
            }
            true
        })
        .map(|sub| sub.count_ones() as usize)
        .max()
        .unwrap_or(0)
}
