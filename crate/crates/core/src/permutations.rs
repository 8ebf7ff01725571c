/// Calls `visit` on every permutation of `1..=n` (Heap's algorithm), stopping
/// early when `visit` returns `false`. Returns whether the walk completed.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut perm: Vec<usize> = (1..=n).collect();
    if !visit(&perm) {
        return false;
    }
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if !visit(&perm) {
                return false;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn visits_each_permutation_once() {
        for n in 0..=6 {
            let mut seen = HashSet::new();
            assert!(for_each_permutation(n, |p| seen.insert(p.to_vec())));
            assert_eq!(seen.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn stops_early() {
        let mut count = 0;
        assert!(!for_each_permutation(5, |_| {
            count += 1;
            count < 7
        }));
        assert_eq!(count, 7);
    }
}
