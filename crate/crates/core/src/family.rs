//! Ground-set and set-family primitives.
//!
//! Elements are labelled `1..=n` externally and stored as bit `i - 1` of a
//! 64-bit mask, so every ground set is limited to [`MAX_N`] points.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{argument, capacity, domain, Error, Result};

/// Largest supported ground set (one machine word of membership bits).
pub const MAX_N: usize = 64;

/// Ground-set size and, for uniform families, the common member size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSetParams {
    pub n: usize,
    pub k: Option<usize>,
}

impl GroundSetParams {
    pub fn new(n: usize, k: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(argument("ground set size must be positive"));
        }
        if n > MAX_N {
            return Err(capacity(format!("n = {n} exceeds the {MAX_N}-point limit")));
        }
        if let Some(k) = k {
            if k > n {
                return Err(argument(format!("uniformity k = {k} exceeds n = {n}")));
            }
        }
        Ok(GroundSetParams { n, k })
    }
}

/// A subset of the ground set, stored as a bitmask.
///
/// Ordering is lexicographic on the increasing element sequence, so
/// `{1,2,3} < {1,2,4} < {1,3} < {2}` and a proper prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KSet(u64);

impl KSet {
    pub const EMPTY: KSet = KSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        KSet(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// Builds a set from 1-based element labels. Repeats are ignored.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut mask = 0u64;
        for x in elements {
            if x == 0 || x > MAX_N {
                return Err(argument(format!("element {x} outside 1..={MAX_N}")));
            }
            mask |= 1 << (x - 1);
        }
        Ok(KSet(mask))
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && hi <= MAX_N, "interval bounds outside 1..=64");
        if lo > hi {
            return KSet::EMPTY;
        }
        let width = hi - lo + 1;
        let ones = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        KSet(ones << (lo - 1))
    }

    /// `[m] = {1, ..., m}`.
    pub fn initial(m: usize) -> Self {
        if m == 0 {
            KSet::EMPTY
        } else {
            KSet::interval(1, m)
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!((1..=MAX_N).contains(&x), "element outside 1..=64");
        KSet(1 << (x - 1))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=MAX_N).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub const fn is_subset(self, other: KSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: KSet) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn intersection(self, other: KSet) -> KSet {
        KSet(self.0 & other.0)
    }

    pub const fn union(self, other: KSet) -> KSet {
        KSet(self.0 | other.0)
    }

    pub const fn difference(self, other: KSet) -> KSet {
        KSet(self.0 & !other.0)
    }

    pub fn with(self, x: usize) -> KSet {
        self.union(KSet::singleton(x))
    }

    pub fn without(self, x: usize) -> KSet {
        self.difference(KSet::singleton(x))
    }

    /// Largest element, or 0 for the empty set.
    pub const fn max_element(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Smallest element, or `None` for the empty set.
    pub const fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Image under `perm`, where `perm[i]` is the 1-based image of element `i + 1`.
    pub fn relabel(self, perm: &[usize]) -> KSet {
        let mut out = 0u64;
        for x in self.elements() {
            out |= 1 << (perm[x - 1] - 1);
        }
        KSet(out)
    }

    /// All `size`-element subsets, in increasing order.
    pub fn subsets_of_size(self, size: usize) -> Vec<KSet> {
        let elems: Vec<usize> = self.elements().collect();
        let mut out = Vec::new();
        if size > elems.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(KSet(idx.iter().fold(0, |m, &i| m | 1 << (elems[i] - 1))));
            // advance the index combination
            let mut pos = size;
            loop {
                if pos == 0 {
                    out.sort();
                    return out;
                }
                pos -= 1;
                if idx[pos] < elems.len() - size + pos {
                    break;
                }
            }
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// Iterator over the 1-based elements of a [`KSet`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The sequences agree below the lowest differing element t. Whoever
        // holds t is smaller unless the other sequence stops before t.
        let t = diff & diff.wrapping_neg();
        let above = !(t | (t - 1));
        let self_holds = self.0 & t != 0;
        let without_t = if self_holds { other.0 } else { self.0 };
        let holder_smaller = without_t & above != 0;
        if self_holds == holder_smaller {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for KSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

/// A duplicate-free family of subsets of `[n]`, kept in increasing member order.
///
/// `k` is the declared uniformity; it is only required to decide the
/// uniformity of an empty family; otherwise uniformity is read off the members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    k: Option<usize>,
    members: Vec<KSet>,
}

/// Sets whose pairwise intersections all equal `kernel`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SunflowerWitness {
    pub petals: Vec<KSet>,
    pub kernel: KSet,
}

impl SetFamily {
    /// Validates and sorts `members`. Duplicates and out-of-range elements are errors.
    pub fn new(n: usize, k: Option<usize>, mut members: Vec<KSet>) -> Result<Self> {
        GroundSetParams::new(n, k)?;
        let ground = KSet::initial(n);
        for m in &members {
            if !m.is_subset(ground) {
                return Err(argument(format!("member {m} not contained in [{n}]")));
            }
            if let Some(k) = k {
                if m.len() != k {
                    return Err(argument(format!("member {m} does not have size {k}")));
                }
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(argument(format!("duplicate member {}", w[0])));
        }
        Ok(SetFamily { n, k, members })
    }

    /// Like [`SetFamily::new`] but collapses duplicates.
    pub fn from_sets(n: usize, k: Option<usize>, mut members: Vec<KSet>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        SetFamily::new(n, k, members)
    }

    /// Builds a family from 1-based element lists.
    pub fn from_lists(n: usize, k: Option<usize>, lists: &[&[usize]]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| KSet::from_elements(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, k, members)
    }

    pub fn empty(n: usize, k: Option<usize>) -> Result<Self> {
        SetFamily::new(n, k, Vec::new())
    }

    /// Every `k`-subset of `[n]`, in increasing order.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        GroundSetParams::new(n, Some(k))?;
        Ok(SetFamily { n, k: Some(k), members: KSet::initial(n).subsets_of_size(k) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn declared_k(&self) -> Option<usize> {
        self.k
    }

    pub fn params(&self) -> GroundSetParams {
        GroundSetParams { n: self.n, k: self.uniformity() }
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn into_members(self) -> Vec<KSet> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: KSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// Common member size, or the declared `k` for an empty family.
    pub fn uniformity(&self) -> Option<usize> {
        match self.members.split_first() {
            None => self.k,
            Some((first, rest)) => {
                let s = first.len();
                rest.iter().all(|m| m.len() == s).then_some(s)
            }
        }
    }

    /// Same members on a different ground set.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        SetFamily::new(n, self.k, self.members.clone())
    }

    /// Same members with the uniformity flag dropped.
    pub fn as_mixed(&self) -> Self {
        SetFamily { n: self.n, k: None, members: self.members.clone() }
    }

    pub fn union(&self) -> KSet {
        self.members.iter().fold(KSet::EMPTY, |acc, m| acc.union(*m))
    }

    /// Largest member size; 0 for the empty family.
    pub fn rank(&self) -> usize {
        self.members.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// The minimum member size `p`.
    pub fn min_member_size(&self) -> Result<usize> {
        self.members
            .iter()
            .map(|m| m.len())
            .min()
            .ok_or_else(|| domain("minimum member size of an empty family"))
    }

    /// The members of size exactly `i`.
    pub fn level(&self, i: usize) -> SetFamily {
        let members = self.members.iter().copied().filter(|m| m.len() == i).collect();
        SetFamily { n: self.n, k: Some(i.min(self.n)), members }
    }

    fn uniform_k(&self) -> Result<usize> {
        self.uniformity().ok_or(Error::NotUniform)
    }

    /// All `(k-1)`-sets lying in some member.
    pub fn shadow(&self) -> Result<SetFamily> {
        let k = self.uniform_k()?;
        if k == 0 {
            return Err(domain("shadow of a 0-uniform family"));
        }
        let mut out: Vec<KSet> = self
            .members
            .iter()
            .flat_map(|m| m.elements().map(move |x| m.without(x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(SetFamily { n: self.n, k: Some(k - 1), members: out })
    }

    /// Number of members containing `e`, where `|e| = k - 1`.
    pub fn codegree(&self, e: KSet) -> Result<usize> {
        let k = self.uniform_k()?;
        if k == 0 || e.len() != k - 1 {
            return Err(argument(format!("codegree needs a {}-set, got {e}", k.saturating_sub(1))));
        }
        Ok(self.members.iter().filter(|m| e.is_subset(**m)).count())
    }

    /// Minimum positive co-degree: the least codegree over the shadow.
    pub fn shadow_degree(&self) -> Result<usize> {
        if self.members.is_empty() {
            return Err(domain("shadow degree of an empty family is undefined"));
        }
        let k = self.uniform_k()?;
        if k == 0 {
            return Err(domain("shadow degree of the family {{}}"));
        }
        let mut counts: HashMap<KSet, usize> = HashMap::new();
        for m in &self.members {
            for x in m.elements() {
                *counts.entry(m.without(x)).or_insert(0) += 1;
            }
        }
        Ok(counts.values().copied().min().expect("non-empty shadow"))
    }

    /// True iff every two members (a member with itself included) meet.
    pub fn is_intersecting(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, a)| self.members[i..].iter().all(|b| a.intersects(*b)))
    }

    /// Maximum number of pairwise disjoint members.
    pub fn matching_number(&self) -> usize {
        fn grow(sets: &[KSet], used: KSet, size: usize, best: &mut usize) {
            if size > *best {
                *best = size;
            }
            for (i, s) in sets.iter().enumerate() {
                if size + (sets.len() - i) <= *best {
                    return;
                }
                if !s.intersects(used) {
                    grow(&sets[i + 1..], used.union(*s), size + 1, best);
                }
            }
        }
        // the empty set is disjoint from everything, itself included
        let nonempty: Vec<KSet> = self.members.iter().copied().filter(|m| !m.is_empty()).collect();
        let extra = usize::from(nonempty.len() < self.members.len());
        let mut best = 0;
        grow(&nonempty, KSet::EMPTY, 0, &mut best);
        best + extra
    }

    /// Minimum size of a set meeting every member.
    ///
    /// Iterative deepening on the size bound; each level branches on the
    /// elements of the first member not yet hit.
    pub fn transversal_number(&self) -> Result<usize> {
        if self.members.iter().any(|m| m.is_empty()) {
            return Err(domain("the empty set is a member, no transversal exists"));
        }
        fn hits(sets: &[KSet], chosen: KSet, budget: usize) -> bool {
            match sets.iter().find(|s| !s.intersects(chosen)) {
                None => true,
                Some(_) if budget == 0 => false,
                Some(s) => s.elements().any(|x| hits(sets, chosen.with(x), budget - 1)),
            }
        }
        let mut t = 0;
        while !hits(&self.members, KSet::EMPTY, t) {
            t += 1;
        }
        Ok(t)
    }

    /// `{F \ e : e ⊆ F}`.
    pub fn link(&self, e: KSet) -> SetFamily {
        let members: Vec<KSet> = self
            .members
            .iter()
            .filter(|m| e.is_subset(**m))
            .map(|m| m.difference(e))
            .collect();
        let k = self.uniformity().and_then(|k| k.checked_sub(e.len()));
        // removing a common subset preserves the relative member order
        SetFamily { n: self.n, k, members }
    }

    /// `{F ∩ x : F ∈ fam}` with duplicates collapsed.
    pub fn trace(&self, x: KSet) -> SetFamily {
        let mut members: Vec<KSet> = self.members.iter().map(|m| m.intersection(x)).collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { n: self.n, k: None, members }
    }

    /// Whether the trace on `x` is intersecting and free of the empty set.
    pub fn is_support(&self, x: KSet) -> bool {
        let t = self.trace(x);
        t.is_intersecting() && !t.members.iter().any(|m| m.is_empty())
    }

    /// The lexicographically first sunflower with `size` petals and a kernel
    /// of `kernel_size` elements, comparing petal index tuples in member order.
    pub fn find_sunflower(&self, size: usize, kernel_size: usize) -> Result<Option<SunflowerWitness>> {
        if size < 2 {
            return Err(argument("a sunflower needs at least 2 petals"));
        }
        fn extend(sets: &[KSet], from: usize, kernel: KSet, chosen: &mut Vec<usize>, size: usize) -> bool {
            if chosen.len() == size {
                return true;
            }
            for j in from..sets.len() {
                if chosen.iter().all(|&i| sets[i].intersection(sets[j]) == kernel) {
                    chosen.push(j);
                    if extend(sets, j + 1, kernel, chosen, size) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let sets = &self.members;
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                let kernel = sets[a].intersection(sets[b]);
                if kernel.len() != kernel_size {
                    continue;
                }
                let mut chosen = vec![a, b];
                if extend(sets, b + 1, kernel, &mut chosen, size) {
                    return Ok(Some(SunflowerWitness {
                        petals: chosen.iter().map(|&i| sets[i]).collect(),
                        kernel,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Image of the family under `perm` (see [`KSet::relabel`]).
    pub fn relabel(&self, perm: &[usize]) -> SetFamily {
        let mut members: Vec<KSet> = self.members.iter().map(|m| m.relabel(perm)).collect();
        members.sort_unstable();
        SetFamily { n: self.n, k: self.k, members }
    }

    /// Members that do not strictly contain another member.
    pub fn minimal_members(&self) -> SetFamily {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|m| !self.members.iter().any(|o| o != m && o.is_subset(*m)))
            .collect();
        SetFamily { n: self.n, k: self.k, members }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, ", self.n)?;
        f.debug_list().entries(self.members.iter()).finish()?;
        write!(f, ")")
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}
