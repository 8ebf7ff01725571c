//! Seeded random families for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{complete_on_y, ell_family_on, star};
use crate::family::{KSet, SetFamily};

fn random_subset<R: Rng>(rng: &mut R, n: usize, size: usize) -> KSet {
    let mut pts: Vec<usize> = (1..=n).collect();
    pts.shuffle(rng);
    KSet::from_elements(pts.into_iter().take(size)).expect("points within range")
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

// Adds candidates in random order whenever they meet every chosen member,
// stopping once `target` members are present.
fn greedy_extend<R: Rng>(rng: &mut R, chosen: &mut Vec<KSet>, mut pool: Vec<KSet>, target: usize) {
    pool.shuffle(rng);
    for s in pool {
        if chosen.len() >= target {
            break;
        }
        if !chosen.contains(&s) && chosen.iter().all(|c| c.intersects(s)) {
            chosen.push(s);
        }
    }
}

/// A non-empty intersecting `k`-uniform family on `[n]`, `1 ≤ k ≤ n ≤ 12`.
/// Mixes random greedy families with random sub- and superfamilies of
/// relabeled stars, `ℓ`-type families and complete families on odd sets.
pub fn intersecting_uniform<R: Rng>(rng: &mut R, n: usize, k: usize) -> SetFamily {
    assert!(1 <= k && k <= n && n <= 12, "sampler range");
    let all = KSet::initial(n).subsets_of_size(k);
    let seed: Vec<KSet> = match rng.gen_range(0..4) {
        0 => vec![random_subset(rng, n, k)],
        1 => star(n, k, rng.gen_range(1..=n)).expect("valid star").into_members(),
        2 => {
            let rmax = k.min(n.div_ceil(2));
            let r = rng.gen_range(1..=rmax);
            let y = random_subset(rng, n, 2 * r - 1);
            ell_family_on(n, k, y).expect("odd base set").into_members()
        }
        _ if 2 * k - 1 <= n => complete_on_y(n, random_subset(rng, n, 2 * k - 1), k).expect("valid").into_members(),
        _ => vec![random_subset(rng, n, k)],
    };
    let mut chosen: Vec<KSet> = if seed.len() > 1 && rng.gen_bool(0.5) {
        let keep = rng.gen_range(1..=seed.len());
        let mut s = seed;
        s.shuffle(rng);
        s.truncate(keep);
        s
    } else {
        seed
    };
    let target = if rng.gen_bool(0.5) { all.len() } else { rng.gen_range(chosen.len()..=all.len().max(chosen.len())) };
    greedy_extend(rng, &mut chosen, all, target);
    let perm = random_permutation(rng, n);
    SetFamily::from_sets(n, Some(k), chosen).expect("valid members").relabel(&perm)
}

/// A non-empty intersecting family on `[n]` with member sizes in `1..=max_rank`,
/// larger sizes drawn more often so singleton stars stay rare.
pub fn intersecting_mixed<R: Rng>(rng: &mut R, n: usize, max_rank: usize) -> SetFamily {
    assert!(1 <= max_rank && max_rank <= n && n <= 12, "sampler range");
    let draw_size = |rng: &mut R| {
        let s = rng.gen_range(1..=max_rank * max_rank);
        (1..=max_rank).find(|i| s <= i * i).expect("size in range")
    };
    let first = draw_size(rng);
    let mut chosen = vec![random_subset(rng, n, first)];
    let target = rng.gen_range(1..=4 * n);
    for _ in 0..8 * n {
        if chosen.len() >= target {
            break;
        }
        let size = draw_size(rng);
        let s = random_subset(rng, n, size);
        if !chosen.contains(&s) && chosen.iter().all(|c| c.intersects(s)) {
            chosen.push(s);
        }
    }
    SetFamily::from_sets(n, None, chosen).expect("valid members")
}

/// An intersecting family on `[n]` (`n ≤ 7`) whose minimum level has
/// transversal number at least `r`, padded with random larger members.
/// Returns `None` when the drawn base is too small for `r`.
pub fn branching_instance<R: Rng>(rng: &mut R, n: usize, r: usize) -> Option<SetFamily> {
    assert!(n <= 7 && r >= 1, "sampler range");
    let p = rng.gen_range(r..=n.min(r + 1));
    if 2 * p - 1 > n {
        return None;
    }
    let base = match rng.gen_range(0..3) {
        0 => complete_on_y(n, random_subset(rng, n, 2 * p - 1), p).ok()?,
        1 => {
            let y = random_subset(rng, n, 2 * r - 1);
            ell_family_on(n, p, y).ok()?
        }
        _ => {
            let mut chosen = vec![random_subset(rng, n, p)];
            greedy_extend(rng, &mut chosen, KSet::initial(n).subsets_of_size(p), usize::MAX);
            SetFamily::from_sets(n, Some(p), chosen).ok()?
        }
    };
    if base.transversal_number().ok()? < r {
        return None;
    }
    let mut members = base.into_members();
    let mut larger: Vec<KSet> = (p + 1..=n).flat_map(|s| KSet::initial(n).subsets_of_size(s)).collect();
    larger.shuffle(rng);
    let extra = rng.gen_range(0..=12);
    let mut added = 0;
    for s in larger {
        if added >= extra {
            break;
        }
        if members.iter().all(|m| m.intersects(s)) {
            members.push(s);
            added += 1;
        }
    }
    SetFamily::from_sets(n, None, members).ok()
}
