//! Brute-force oracles. Nothing here calls into the search code under test.
#![allow(dead_code)]

use itertools::Itertools;
use skewperm::Permutation;

pub fn perm(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

/// Relative order of a sequence of distinct values.
pub fn pattern_of(values: &[u32]) -> Vec<u32> {
    values.iter().map(|v| values.iter().filter(|w| *w <= v).count() as u32).collect()
}

/// Tries every subsequence of the right length.
pub fn naive_contains(p: &[u32], q: &[u32]) -> bool {
    (0..p.len()).combinations(q.len()).any(|idx| pattern_of(&idx.iter().map(|&i| p[i]).collect::<Vec<_>>()) == q)
}

/// All permutations of length n, lexicographic.
pub fn all_perms(n: usize) -> Vec<Vec<u32>> {
    (1..=n as u32).permutations(n).collect()
}

pub fn naive_avoiders(n: usize, patterns: &[Vec<u32>]) -> Vec<Vec<u32>> {
    all_perms(n).into_iter().filter(|p| patterns.iter().all(|q| !naive_contains(p, q))).collect()
}

/// Skew blocks counted straight from the definition: a cut after j entries is
/// valid when every earlier entry exceeds every later one.
pub fn naive_block_count(p: &[u32]) -> usize {
    1 + (1..p.len()).filter(|&j| p[..j].iter().min() > p[j..].iter().max()).count()
}

pub fn to_u64(c: &num_bigint::BigUint) -> u64 {
    c.try_into().unwrap()
}
