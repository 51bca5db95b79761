//! Tuple enumeration helpers shared by the closure routines.

/// Calls `f` on every tuple in `0..len` of length `arity`, in lexicographic
/// order. Stops early and returns `false` if `f` does.
pub(crate) fn for_each_tuple(arity: usize, len: usize, f: impl FnMut(&[usize]) -> bool) -> bool {
    let lo = vec![0; arity];
    let hi = vec![len; arity];
    odometer(&lo, &hi, f)
}

/// Calls `f` on every tuple over `0..len` of length `arity` that has at least
/// one entry `>= old`, each exactly once. Used for semi-naive closure: the
/// entries `old..len` are the ones added in the last round.
pub(crate) fn for_each_new_tuple(arity: usize, old: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if old >= len {
        return true;
    }
    let mut lo = vec![0; arity];
    let mut hi = vec![len; arity];
    // Split on the position of the first new entry.
    for first_new in 0..arity {
        for i in 0..arity {
            (lo[i], hi[i]) = match i.cmp(&first_new) {
                std::cmp::Ordering::Less => (0, old),
                std::cmp::Ordering::Equal => (old, len),
                std::cmp::Ordering::Greater => (0, len),
            };
        }
        if !odometer(&lo, &hi, &mut f) {
            return false;
        }
    }
    true
}

fn odometer(lo: &[usize], hi: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if lo.iter().zip(hi).any(|(l, h)| l >= h) {
        return true;
    }
    let mut cur = lo.to_vec();
    loop {
        if !f(&cur) {
            return false;
        }
        let mut i = cur.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < hi[i] {
                break;
            }
            cur[i] = lo[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn new_tuples_are_exactly_those_touching_new_entries() {
        for arity in 1..=3 {
            for len in 0..=4 {
                for old in 0..=len {
                    let mut seen = Vec::new();
                    for_each_new_tuple(arity, old, len, |t| {
                        seen.push(t.to_vec());
                        true
                    });
                    let set: BTreeSet<_> = seen.iter().cloned().collect();
                    assert_eq!(set.len(), seen.len(), "duplicates");
                    let mut expected = BTreeSet::new();
                    for_each_tuple(arity, len, |t| {
                        if t.iter().any(|&x| x >= old) {
                            expected.insert(t.to_vec());
                        }
                        true
                    });
                    assert_eq!(set, expected);
                }
            }
        }
    }

    #[test]
    fn nullary_tuple_is_visited_once() {
        let mut n = 0;
        for_each_tuple(0, 5, |t| {
            assert!(t.is_empty());
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }
}
