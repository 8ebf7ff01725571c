use super::CheckReport;
use crate::bounds::binom;
use crate::error::{capacity, domain, Result};
use crate::family::{KSet, SetFamily};

fn require_uniform_intersecting(fam: &SetFamily) -> Result<usize> {
    if fam.is_empty() {
        return Err(domain("check needs a non-empty family"));
    }
    let k = fam.uniformity().ok_or_else(|| domain("check needs a uniform family"))?;
    if !fam.is_intersecting() {
        return Err(domain("check needs an intersecting family"));
    }
    Ok(k)
}

/// `τ(fam) ≥ δ⁺(fam)` for a non-empty intersecting uniform family.
pub fn verify_tau_ge_delta(fam: &SetFamily) -> Result<CheckReport> {
    const NAME: &str = "tau-ge-delta";
    require_uniform_intersecting(fam)?;
    let tau = fam.transversal_number()?;
    let delta = fam.shadow_degree()?;
    let summary = format!("tau = {tau}, shadow degree = {delta}");
    Ok(if tau >= delta {
        CheckReport::pass(NAME, summary)
    } else {
        CheckReport::fail(NAME, summary).with_counterexample(fam.clone())
    })
}

/// With `δ⁺(fam) ≥ r`, every non-empty link at a point has shadow degree at least `r`.
pub fn verify_link_degree(fam: &SetFamily, r: usize) -> Result<CheckReport> {
    const NAME: &str = "link-degree";
    if fam.is_empty() {
        return Err(domain("link-degree check needs a non-empty family"));
    }
    let k = fam.uniformity().ok_or_else(|| domain("link-degree check needs a uniform family"))?;
    if k < 2 {
        return Err(domain("link-degree check needs k >= 2"));
    }
    let delta = fam.shadow_degree()?;
    if delta < r {
        return Err(domain(format!("precondition fails: shadow degree {delta} < r = {r}")));
    }
    let mut details = Vec::new();
    for x in 1..=fam.n() {
        let link = fam.link(KSet::singleton(x));
        if link.is_empty() {
            continue;
        }
        let d = link.shadow_degree()?;
        details.push(format!("{x}: {d}"));
        if d < r {
            return Ok(CheckReport::fail(NAME, format!("link at {x} has shadow degree {d} < {r}"))
                .with_counterexample(link)
                .with_details(details));
        }
    }
    Ok(CheckReport::pass(NAME, format!("every non-empty link has shadow degree >= {r}")).with_details(details))
}

/// No sunflower with three petals and a one-point kernel when `δ⁺ ≥ 2`.
pub fn verify_no_sunflower_3_1(fam: &SetFamily) -> Result<CheckReport> {
    const NAME: &str = "no-sunflower";
    require_uniform_intersecting(fam)?;
    let delta = fam.shadow_degree()?;
    if delta < 2 {
        return Err(domain(format!("precondition fails: shadow degree {delta} < 2")));
    }
    Ok(match fam.find_sunflower(3, 1)? {
        None => CheckReport::pass(NAME, "no sunflower of size 3 with a one-point kernel"),
        Some(w) => {
            let cx = SetFamily::new(fam.n(), fam.declared_k(), w.petals.clone())?;
            CheckReport::fail(NAME, format!("sunflower with kernel {}", w.kernel)).with_counterexample(cx)
        }
    })
}

/// Largest `C(n,k)` for which the classification enumerates intersecting families.
pub const CLASSIFICATION_MAX_SETS: usize = 20;

/// Every non-empty intersecting `k`-uniform family on `[n]` with shadow
/// degree at least `k` is the set of all `k`-subsets of a `(2k-1)`-set.
/// Families are enumerated exhaustively by a DFS that only adds sets meeting
/// every chosen one; the feasible count must equal `C(n, 2k-1)`.
pub fn verify_delta_k_classification(n: usize, k: usize) -> Result<CheckReport> {
    const NAME: &str = "classification";
    if k == 0 || k > n {
        return Err(domain(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let sets = KSet::initial(n).subsets_of_size(k);
    if sets.len() > CLASSIFICATION_MAX_SETS {
        return Err(capacity(format!("C({n},{k}) = {} exceeds {CLASSIFICATION_MAX_SETS}", sets.len())));
    }
    let compat: Vec<u32> = sets
        .iter()
        .map(|a| sets.iter().enumerate().filter(|(_, b)| a.intersects(**b)).fold(0, |acc, (j, _)| acc | 1 << j))
        .collect();

    struct Walk<'a> {
        n: usize,
        k: usize,
        sets: &'a [KSet],
        compat: &'a [u32],
        visited: u64,
        feasible: u64,
        bad: Option<SetFamily>,
    }
    impl Walk<'_> {
        fn visit(&mut self, chosen: &mut Vec<KSet>, allowed: u32, from: usize) {
            for j in from..self.sets.len() {
                if self.bad.is_some() {
                    return;
                }
                if allowed >> j & 1 == 0 {
                    continue;
                }
                chosen.push(self.sets[j]);
                self.visited += 1;
                let fam = SetFamily::new(self.n, Some(self.k), chosen.clone()).expect("distinct sorted sets");
                if fam.shadow_degree().expect("non-empty") >= self.k {
                    self.feasible += 1;
                    let u = fam.union();
                    let complete = u.len() == 2 * self.k - 1 && fam.len() == u.subsets_of_size(self.k).len();
                    if !complete {
                        self.bad = Some(fam);
                    }
                }
                self.visit(chosen, allowed & self.compat[j], j + 1);
                chosen.pop();
            }
        }
    }
    let mut walk = Walk { n, k, sets: &sets, compat: &compat, visited: 0, feasible: 0, bad: None };
    walk.visit(&mut Vec::new(), u32::MAX, 0);
    let details = vec![format!("{} intersecting families visited, {} feasible", walk.visited, walk.feasible)];
    if let Some(bad) = walk.bad {
        return Ok(CheckReport::fail(NAME, "feasible family is not complete on a (2k-1)-set")
            .with_counterexample(bad)
            .with_details(details));
    }
    let expected = binom(n as i64, 2 * k as i64 - 1);
    if num_bigint::BigUint::from(walk.feasible) != expected {
        return Ok(CheckReport::fail(NAME, format!("{} feasible families, expected {expected}", walk.feasible))
            .with_details(details));
    }
    Ok(CheckReport::pass(NAME, format!("all {} feasible families are complete on a (2k-1)-set", walk.feasible))
        .with_details(details))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_on_y, design_2_6_3_2, ell_family, star};

    #[test]
    fn tau_examples() {
        assert!(verify_tau_ge_delta(&ell_family(8, 3, 2).unwrap()).unwrap().passed);
        assert!(verify_tau_ge_delta(&complete_on_y(5, KSet::initial(5), 3).unwrap()).unwrap().passed);
        assert!(verify_tau_ge_delta(&star(6, 3, 1).unwrap()).unwrap().passed);
        assert!(verify_tau_ge_delta(&SetFamily::empty(4, Some(2)).unwrap()).is_err());
    }

    #[test]
    fn link_examples() {
        assert!(verify_link_degree(&ell_family(7, 3, 2).unwrap(), 2).unwrap().passed);
        assert!(verify_link_degree(&complete_on_y(5, KSet::initial(5), 3).unwrap(), 3).unwrap().passed);
        assert!(verify_link_degree(&star(6, 3, 1).unwrap(), 1).unwrap().passed);
        assert!(verify_link_degree(&star(6, 3, 1).unwrap(), 2).is_err());
    }

    #[test]
    fn sunflower_examples() {
        assert!(verify_no_sunflower_3_1(&ell_family(8, 3, 2).unwrap()).unwrap().passed);
        assert!(verify_no_sunflower_3_1(&design_2_6_3_2()).unwrap().passed);
        assert!(matches!(verify_no_sunflower_3_1(&star(7, 3, 1).unwrap()), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn classification_small_cases() {
        for (n, k) in [(3, 2), (4, 2), (5, 2)] {
            let rep = verify_delta_k_classification(n, k).unwrap();
            assert!(rep.passed, "{n} {k}: {}", rep.summary);
        }
        assert!(verify_delta_k_classification(7, 3).is_err());
    }
}
