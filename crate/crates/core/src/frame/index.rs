//! Index-tuple bookkeeping for symmetric and alternating tensors.

use itertools::Itertools;

use crate::exact::{factorial, Rational};

/// Nondecreasing tuples of length `p` over `0..n`.
pub fn multisets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0..n).combinations_with_replacement(p).collect()
}

/// Strictly increasing tuples of length `p` over `0..n`.
pub fn increasing(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(p).collect()
}

/// Every ordered tuple of length `p` over `0..n`.
pub fn tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![vec![]];
    }
    (0..p).map(|_| 0..n).multi_cartesian_product().collect()
}

pub fn sorted(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v
}

/// Removes one occurrence of `b` from a sorted tuple.
pub fn remove_one(idx: &[usize], b: usize) -> Option<Vec<usize>> {
    let pos = idx.iter().position(|&x| x == b)?;
    let mut v = idx.to_vec();
    v.remove(pos);
    Some(v)
}

/// Sorted tuple with the elements of `sub` removed; `sub` must be a
/// sub-multiset of `idx`.
pub fn difference(idx: &[usize], sub: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    for s in sub {
        let pos = v.iter().position(|x| x == s).expect("not a sub-multiset");
        v.remove(pos);
    }
    v
}

/// Distinct sub-multisets of size `k` of the sorted tuple `idx`.
pub fn sub_multisets(idx: &[usize], k: usize) -> Vec<Vec<usize>> {
    idx.iter().copied().combinations(k).unique().collect()
}

/// Distinct orderings of a tuple.
pub fn orderings(idx: &[usize]) -> Vec<Vec<usize>> {
    let len = idx.len();
    idx.iter().copied().permutations(len).unique().collect()
}

/// Multiplicity counts of each value in a tuple.
fn counts(idx: &[usize]) -> Vec<(usize, usize)> {
    idx.iter().copied().counts().into_iter().collect()
}

/// Number of distinct orderings of a tuple, `p! / prod m!`.
pub fn ordering_count(idx: &[usize]) -> Rational {
    counts(idx)
        .into_iter()
        .fold(factorial(idx.len() as u64), |acc, (_, m)| acc / factorial(m as u64))
}

/// Fraction of all orderings of `whole` whose leading block reads exactly
/// the ordered tuple `head`.
pub fn leading_block_weight(whole: &[usize], head: &[usize]) -> Rational {
    let mut w = factorial((whole.len() - head.len()) as u64) / factorial(whole.len() as u64);
    let whole_counts = whole.iter().copied().counts();
    for (v, a) in head.iter().copied().counts() {
        let m = whole_counts[&v];
        w = w * factorial(m as u64) / factorial((m - a) as u64);
    }
    w
}

/// Sign of the permutation sorting `idx`, or zero on a repeated entry.
pub fn sort_sign(idx: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}
