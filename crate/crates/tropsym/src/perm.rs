//! Small combinatorial helpers: distinct multiset permutations and
//! k-subsets, used by the symmetrization operators.

use alloc::vec::Vec;

/// Advances `v` to its lexicographic successor. Returns `false` once `v`
/// is the last (descending) permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` once per distinct permutation of `items` (order of visits is
/// lexicographic). Equal elements are not revisited, so the number of
/// calls is `n! / ∏ multiplicity!`.
pub fn for_each_distinct_permutation<T, F>(items: &[T], mut f: F)
where
    T: Ord + Clone,
    F: FnMut(&[T]),
{
    let mut v: Vec<T> = items.to_vec();
    v.sort();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// Calls `f` with each k-subset of `0..n` in lexicographic order.
pub fn for_each_combination<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]),
{
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
