//! Exact computation of `f(n, k, r)`: the largest non-empty intersecting
//! `k`-uniform family on `[n]` whose shadow degree is at least `r`.
//!
//! The solver is a depth-first branch and bound over the `k`-sets in
//! lexicographic order. A partial family is only extended by sets meeting
//! all chosen members, so every node is an intersecting family. The shadow
//! degree condition is not hereditary, so each node is tested for
//! feasibility on its own, and two sound prunes cut the tree:
//!
//! * size: the current size plus a greedy partition of the remaining
//!   candidates into groups of pairwise disjoint sets (at most one per group
//!   can be added);
//! * co-degree deficit: a `(k-1)`-set already in the shadow stays there, so
//!   if it cannot reach `r` supersets among the chosen and remaining sets,
//!   no extension is feasible.
//!
//! The first chosen set is fixed to the first `k`-set in branching order.
//! The tree below it is split into independent tasks (one per second set),
//! each searched with only its own incumbent, so results and node counts do
//! not depend on the number of worker threads.

mod canonical;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{complete_on_y, ell_family_on, star};
use crate::error::{argument, capacity, Result};
use crate::family::{KSet, SetFamily, MAX_N};

pub use canonical::{canonical_form, is_isomorphic, CanonicalForm, CANONICAL_MAX_N};

/// Upper limit on `C(n, k)`: candidate sets are tracked in a 128-bit mask.
pub const MAX_CANDIDATES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    OptimumOnly,
    EnumerateExtremal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub mode: SearchMode,
    /// Node cap applied to each top-level task separately.
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub workers: usize,
    /// Relabeling applied to the sets before ordering them for branching;
    /// `order[i]` is the image of element `i + 1`.
    pub branch_order: Option<Vec<usize>>,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, r: usize) -> Self {
        SearchProblem {
            n,
            k,
            r,
            mode: SearchMode::OptimumOnly,
            node_budget: None,
            time_budget: None,
            workers: 1,
            branch_order: None,
        }
    }

    pub fn enumerate(mut self) -> Self {
        self.mode = SearchMode::EnumerateExtremal;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_branch_order(mut self, order: Vec<usize>) -> Self {
        self.branch_order = Some(order);
        self
    }

    fn validate(&self) -> Result<()> {
        let SearchProblem { n, k, r, .. } = *self;
        if n == 0 || k == 0 || k > n || r == 0 {
            return Err(argument(format!("need 1 <= k <= n and r >= 1, got n = {n}, k = {k}, r = {r}")));
        }
        if n > MAX_N {
            return Err(capacity(format!("n = {n} exceeds {MAX_N}")));
        }
        let count = crate::bounds::binom(n as i64, k as i64);
        if count > num_bigint::BigUint::from(MAX_CANDIDATES) {
            return Err(capacity(format!("C({n},{k}) = {count} candidate sets exceeds {MAX_CANDIDATES}")));
        }
        if let Some(order) = &self.branch_order {
            let mut seen = vec![false; n];
            let ok = order.len() == n
                && order.iter().all(|&x| (1..=n).contains(&x) && !std::mem::replace(&mut seen[x - 1], true));
            if !ok {
                return Err(argument("branch order must be a permutation of 1..=n"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// `None` when no non-empty family qualifies.
    pub optimum: Option<usize>,
    pub witness: Option<SetFamily>,
    /// Canonical forms of the optimal families, one per isomorphism class
    /// (only filled when enumerating).
    pub extremal_classes: Vec<SetFamily>,
    pub nodes_expanded: u64,
    /// False iff a node or time budget stopped the search early.
    pub proven: bool,
}

/// `f(n, k, r)` with a witness family.
pub fn max_family_size(problem: &SearchProblem) -> Result<SearchReport> {
    let mut p = problem.clone();
    p.mode = SearchMode::OptimumOnly;
    run(&p)
}

/// Every optimal family, grouped into isomorphism classes.
pub fn enumerate_extremal(problem: &SearchProblem) -> Result<SearchReport> {
    let mut p = problem.clone();
    p.mode = SearchMode::EnumerateExtremal;
    run(&p)
}

/// Precomputed incidence data over the candidate sets.
struct Instance {
    sets: Vec<KSet>,
    /// `compat[i]`: candidates meeting set `i` (including `i`).
    compat: Vec<u128>,
    /// Shadow element ids of each set.
    shadow_ids: Vec<Vec<u32>>,
    /// `supersets[e]`: candidates containing shadow element `e`.
    supersets: Vec<u128>,
    r: u32,
}

impl Instance {
    fn new(n: usize, k: usize, r: usize, order: Option<&[usize]>) -> Self {
        let mut sets = KSet::initial(n).subsets_of_size(k);
        if let Some(order) = order {
            sets.sort_by_key(|s| s.relabel(order));
        }
        let compat = sets
            .iter()
            .map(|a| sets.iter().enumerate().filter(|(_, b)| a.intersects(**b)).fold(0u128, |m, (j, _)| m | 1 << j))
            .collect();
        let mut ids: HashMap<KSet, u32> = HashMap::new();
        let mut supersets: Vec<u128> = Vec::new();
        let mut shadow_ids = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            let mut mine = Vec::with_capacity(k);
            for x in s.elements() {
                let e = s.without(x);
                let id = *ids.entry(e).or_insert_with(|| {
                    supersets.push(0);
                    (supersets.len() - 1) as u32
                });
                supersets[id as usize] |= 1 << i;
                mine.push(id);
            }
            shadow_ids.push(mine);
        }
        Instance { sets, compat, shadow_ids, supersets, r: r as u32 }
    }

    /// Some shadow element of `chosen` cannot reach `r` supersets inside `chosen | avail`.
    fn deficient(&self, chosen: u128, avail: u128) -> bool {
        if self.r <= 1 {
            return false;
        }
        let pool = chosen | avail;
        bits(chosen).any(|i| self.shadow_ids[i].iter().any(|&e| (self.supersets[e as usize] & pool).count_ones() < self.r))
    }

    fn feasible(&self, chosen: u128) -> bool {
        chosen != 0 && !self.deficient(chosen, 0)
    }

    /// Number of groups in a greedy partition of `avail` into pairwise disjoint sets.
    fn disjoint_groups(&self, avail: u128) -> usize {
        let mut left = avail;
        let mut groups = 0;
        while left != 0 {
            groups += 1;
            let mut open = left;
            while open != 0 {
                let v = open.trailing_zeros() as usize;
                left &= !(1 << v);
                open &= !self.compat[v];
            }
        }
        groups
    }

    fn family(&self, n: usize, k: usize, chosen: u128) -> SetFamily {
        SetFamily::from_sets(n, Some(k), bits(chosen).map(|i| self.sets[i]).collect()).expect("candidate sets are valid")
    }
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

struct Task<'a> {
    inst: &'a Instance,
    mode: SearchMode,
    /// Smallest family size still worth recording.
    need: usize,
    best: usize,
    found: Vec<u128>,
    nodes: u64,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    aborted: bool,
}

#[derive(Debug)]
struct TaskResult {
    best: usize,
    found: Vec<u128>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Task<'a> {
    fn record(&mut self, chosen: u128, size: usize) {
        if size < self.need {
            return;
        }
        match self.mode {
            SearchMode::OptimumOnly => {
                self.best = size;
                self.found = vec![chosen];
                self.need = size + 1;
            }
            SearchMode::EnumerateExtremal => {
                if size > self.best {
                    self.best = size;
                    self.found.clear();
                }
                self.found.push(chosen);
                self.need = size;
            }
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        let over_nodes = self.node_budget.is_some_and(|b| self.nodes >= b);
        let over_time = self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        self.aborted = over_nodes || over_time;
        self.aborted
    }

    fn expand(&mut self, chosen: u128, size: usize, cand: u128) {
        if self.out_of_budget() {
            return;
        }
        self.nodes += 1;
        if self.inst.deficient(chosen, cand) {
            return;
        }
        if self.inst.feasible(chosen) {
            self.record(chosen, size);
        }
        let mut rest = cand;
        let mut first = true;
        while rest != 0 {
            if size + self.inst.disjoint_groups(rest) < self.need {
                return;
            }
            if !first && self.inst.deficient(chosen, rest) {
                return;
            }
            first = false;
            let c = rest.trailing_zeros() as usize;
            rest &= !(1 << c);
            self.expand(chosen | 1 << c, size + 1, rest & self.inst.compat[c]);
            if self.aborted {
                return;
            }
        }
    }

    fn finish(self) -> TaskResult {
        TaskResult { best: self.best, found: self.found, nodes: self.nodes, aborted: self.aborted }
    }
}

/// Largest feasible named construction; a valid starting incumbent.
fn construction_lower_bound(n: usize, k: usize, r: usize) -> usize {
    let mut candidates = Vec::new();
    if 2 * r - 1 <= n && r <= k {
        candidates.push(ell_family_on(n, k, KSet::initial(2 * r - 1)));
    }
    if 2 * k - 1 <= n {
        candidates.push(complete_on_y(n, KSet::initial(2 * k - 1), k));
    } else {
        candidates.push(SetFamily::complete(n, k));
    }
    candidates.push(star(n, k, 1));
    candidates
        .into_iter()
        .flatten()
        .filter(|f| !f.is_empty() && f.is_intersecting() && f.shadow_degree().is_ok_and(|d| d >= r))
        .map(|f| f.len())
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Copy)]
enum Start {
    Root,
    Second { chosen: u128, size: usize, cand: u128 },
}

fn run(problem: &SearchProblem) -> Result<SearchReport> {
    problem.validate()?;
    let SearchProblem { n, k, r, mode, .. } = *problem;
    let inst = Instance::new(n, k, r, problem.branch_order.as_deref());
    let need0 = construction_lower_bound(n, k, r).max(1);
    let deadline = problem.time_budget.map(|d| Instant::now() + d);

    let root: u128 = 1;
    let cand0 = inst.compat[0] & !root;
    let mut starts = vec![Start::Root];
    let mut rest = cand0;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        // Mirror the loop prunes of `expand` at the root.
        let viable = 1 + inst.disjoint_groups(rest) >= need0 && !inst.deficient(root, rest);
        rest &= !(1 << c);
        if viable {
            starts.push(Start::Second { chosen: root | 1 << c, size: 2, cand: rest & inst.compat[c] });
        }
    }

    let run_task = |start: &Start| -> TaskResult {
        let mut task = Task {
            inst: &inst,
            mode,
            need: need0,
            best: 0,
            found: Vec::new(),
            nodes: 0,
            node_budget: problem.node_budget,
            deadline,
            aborted: false,
        };
        match *start {
            Start::Root => {
                task.nodes += 1;
                if inst.feasible(root) {
                    task.record(root, 1);
                }
            }
            Start::Second { chosen, size, cand } => task.expand(chosen, size, cand),
        }
        task.finish()
    };

    let results: Vec<TaskResult> = if problem.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(problem.workers)
            .build()
            .map_err(|e| argument(format!("cannot start {} workers: {e}", problem.workers)))?;
        pool.install(|| starts.par_iter().map(run_task).collect())
    } else {
        starts.iter().map(run_task).collect()
    };

    let nodes_expanded = results.iter().map(|t| t.nodes).sum();
    let proven = !results.iter().any(|t| t.aborted);
    let best = results.iter().map(|t| t.best).max().unwrap_or(0);
    let optimum = (best > 0).then_some(best);
    let witness = optimum.and_then(|b| {
        results.iter().find(|t| t.best == b).map(|t| inst.family(n, k, t.found[0]))
    });

    let mut extremal_classes = Vec::new();
    if mode == SearchMode::EnumerateExtremal {
        if let Some(b) = optimum {
            let mut classes: Vec<Vec<KSet>> = Vec::new();
            for t in results.iter().filter(|t| t.best == b) {
                for &chosen in &t.found {
                    classes.push(canonical_form(&inst.family(n, k, chosen))?.members);
                }
            }
            classes.sort();
            classes.dedup();
            extremal_classes = classes
                .into_iter()
                .map(|m| SetFamily::new(n, Some(k), m).expect("canonical members are valid"))
                .collect();
        }
    }

    Ok(SearchReport { n, k, r, optimum, witness, extremal_classes, nodes_expanded, proven })
}
