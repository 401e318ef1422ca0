//! Exhaustive enumeration of pattern avoiders, stratified by skew-block count.
//!
//! Permutations are grown one position at a time. Since every prefix of the
//! current prefix was already checked, only occurrences that use the newest
//! entry need to be searched for; a prefix containing any pattern is pruned.
//! The number of skew cuts is carried along the same search: a cut after
//! position `j` of a length-`n` permutation exists iff the running minimum of
//! the first `j` entries is `n - j + 1`.
//!
//! Counting splits the search tree by first entry and runs the subtrees on the
//! current rayon pool. The per-subtree results are summed in a fixed order, so
//! a one-thread pool produces the same table as any other.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Matcher, Permutation};

/// Largest length enumerated unless configured otherwise.
pub const DEFAULT_CEILING: usize = 14;

/// A nonempty set of nonempty patterns, none containing another.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    /// Deduplicates and drops every pattern that contains another member.
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let unique: BTreeSet<Permutation> = patterns.into_iter().collect();
        if unique.is_empty() || unique.iter().any(Permutation::is_empty) {
            return Err(Error::EmptyPatternSet);
        }
        let patterns =
            unique.iter().filter(|q| !unique.iter().any(|other| other != *q && q.contains(other))).cloned().collect();
        Ok(Self { patterns })
    }

    pub fn single(pattern: Permutation) -> Result<Self> {
        Self::new([pattern])
    }

    /// Parses comma-separated compact patterns (`"123,132"`), or
    /// semicolon-separated patterns in either notation (`"1,3,2;10,9,8,7,6,5,4,3,2,1"`).
    pub fn parse(text: &str) -> Result<Self> {
        let items: Vec<&str> = if text.contains(';') { text.split(';').collect() } else { text.split(',').collect() };
        let patterns = items.into_iter().map(Permutation::parse).collect::<Result<Vec<_>>>()?;
        Self::new(patterns)
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn is_avoided_by(&self, p: &Permutation) -> bool {
        self.patterns.iter().all(|q| p.avoids(q))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.patterns.iter().any(|q| q.values().iter().any(|&v| v > 9)) { ";" } else { "," };
        let text: Vec<String> = self.patterns.iter().map(Permutation::to_notation).collect();
        f.write_str(&text.join(sep))
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet({self})")
    }
}

impl Serialize for PatternSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.patterns.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let patterns = Vec::<Permutation>::deserialize(d)?;
        Self::new(patterns).map_err(serde::de::Error::custom)
    }
}

/// Exact counts `Av_n(S)` and `Av_{n,l}(S)` for `n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub(crate) pattern_set: PatternSet,
    pub(crate) total: Vec<BigUint>,
    /// Row `n` has `n` entries, for `l = 1..=n`.
    pub(crate) by_blocks: Vec<Vec<BigUint>>,
}

impl CountTable {
    /// Builds a table from raw rows, checking the row-sum and shape invariants.
    pub fn from_rows(pattern_set: PatternSet, total: Vec<BigUint>, by_blocks: Vec<Vec<BigUint>>) -> Result<Self> {
        if total.is_empty() || total.len() != by_blocks.len() {
            return Err(Error::Table("total and block rows differ in length".into()));
        }
        if total[0] != BigUint::from(1u32) {
            return Err(Error::Table("total[0] must be 1".into()));
        }
        for (n, row) in by_blocks.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Table(format!("row {n} has {} entries", row.len())));
            }
            if n > 0 && row.iter().sum::<BigUint>() != total[n] {
                return Err(Error::Table(format!("row {n} does not sum to its total")));
            }
        }
        Ok(Self { pattern_set, total, by_blocks })
    }

    pub fn pattern_set(&self) -> &PatternSet {
        &self.pattern_set
    }

    pub fn n_max(&self) -> usize {
        self.total.len() - 1
    }

    pub fn totals(&self) -> &[BigUint] {
        &self.total
    }

    pub fn total(&self, n: usize) -> &BigUint {
        &self.total[n]
    }

    /// Counts for `l = 1..=n`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.by_blocks[n]
    }

    /// `Av_{n,l}(S)`, zero when `l` is 0 or exceeds `n`.
    pub fn by_blocks(&self, n: usize, ell: usize) -> BigUint {
        match ell {
            0 => BigUint::zero(),
            _ => self.by_blocks[n].get(ell - 1).cloned().unwrap_or_default(),
        }
    }
}

/// Enumeration driver for one pattern set under a length ceiling.
#[derive(Clone, Debug)]
pub struct Enumerator {
    set: PatternSet,
    matchers: Vec<Matcher>,
    ceiling: usize,
}

impl Enumerator {
    pub fn new(set: PatternSet) -> Self {
        let matchers = set.patterns().iter().map(|q| Matcher::new(q.values(), true)).collect();
        Self { set, matchers, ceiling: DEFAULT_CEILING }
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn pattern_set(&self) -> &PatternSet {
        &self.set
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n > self.ceiling {
            Err(Error::CeilingExceeded { n, ceiling: self.ceiling })
        } else {
            Ok(())
        }
    }

    /// Avoiders of length `n` in lexicographic order.
    pub fn avoiders(&self, n: usize) -> Result<Avoiders<'_>> {
        self.guard(n)?;
        Ok(Avoiders::new(self, n))
    }

    /// Avoiders of length `n` with exactly `ell` skew blocks, in lexicographic order.
    pub fn avoiders_with_blocks(&self, n: usize, ell: usize) -> Result<impl Iterator<Item = Permutation> + '_> {
        Ok(self.avoiders(n)?.filter(move |p| p.block_count() == ell))
    }

    pub fn count(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Ok(BigUint::from(1u32));
        }
        Ok(self.count_row(n)?.into_iter().sum())
    }

    /// `Av_{n,l}` for `l = 1..=n`.
    pub fn count_row(&self, n: usize) -> Result<Vec<BigUint>> {
        self.guard(n)?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let partial: Vec<Vec<u128>> = (1..=n as u32)
            .into_par_iter()
            .map(|first| {
                let mut search = Search::new(self, n);
                search.push(first);
                let mut row = vec![0u128; n];
                if !search.pruned() {
                    search.count_into(&mut row);
                }
                row
            })
            .collect();
        let mut row = vec![BigUint::zero(); n];
        for sub in partial {
            for (acc, c) in row.iter_mut().zip(sub) {
                *acc += c;
            }
        }
        Ok(row)
    }

    pub fn count_table(&self, n_max: usize) -> Result<CountTable> {
        self.guard(n_max)?;
        let mut total = vec![BigUint::from(1u32)];
        let mut by_blocks = vec![Vec::new()];
        for n in 1..=n_max {
            let row = self.count_row(n)?;
            total.push(row.iter().sum());
            by_blocks.push(row);
        }
        CountTable::from_rows(self.set.clone(), total, by_blocks)
    }
}

/// Lists the avoiders of `set` of length `n` under the default ceiling.
pub fn enumerate_avoiders(n: usize, set: &PatternSet) -> Result<Vec<Permutation>> {
    Ok(Enumerator::new(set.clone()).avoiders(n)?.collect())
}

pub fn count_avoiders(n: usize, set: &PatternSet) -> Result<BigUint> {
    Enumerator::new(set.clone()).count(n)
}

pub fn count_by_blocks(n_max: usize, set: &PatternSet) -> Result<CountTable> {
    Enumerator::new(set.clone()).count_table(n_max)
}

/// Prefix state shared by the iterator and the counter.
#[derive(Clone)]
struct Search<'a> {
    matchers: &'a [Matcher],
    n: usize,
    prefix: Vec<u32>,
    used: Vec<bool>,
    /// Running minimum of the prefix, per depth.
    mins: Vec<u32>,
    /// Skew cuts found so far, per depth.
    cuts: Vec<usize>,
    /// Whether the prefix at each depth contains a pattern.
    dead: Vec<bool>,
    idx: Vec<usize>,
    val: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(e: &'a Enumerator, n: usize) -> Self {
        let k = e.matchers.iter().map(Matcher::len).max().unwrap_or(0);
        Self {
            matchers: &e.matchers,
            n,
            prefix: Vec::with_capacity(n),
            used: vec![false; n + 1],
            mins: Vec::with_capacity(n),
            cuts: Vec::with_capacity(n),
            dead: Vec::with_capacity(n),
            idx: vec![0; k],
            val: vec![0; k],
        }
    }

    fn push(&mut self, v: u32) {
        self.prefix.push(v);
        self.used[v as usize] = true;
        let j = self.prefix.len();
        let min = self.mins.last().map_or(v, |&m| m.min(v));
        let cuts = self.cuts.last().copied().unwrap_or(0);
        // a cut after the final position is the end of the permutation, not a cut
        let cut = j < self.n && min as usize == self.n - j + 1;
        self.mins.push(min);
        self.cuts.push(cuts + usize::from(cut));
        let dead = self.matchers.iter().any(|m| m.matches_with(&self.prefix, &mut self.idx, &mut self.val));
        self.dead.push(dead);
    }

    fn pop(&mut self) -> Option<u32> {
        let v = self.prefix.pop()?;
        self.used[v as usize] = false;
        self.mins.pop();
        self.cuts.pop();
        self.dead.pop();
        Some(v)
    }

    fn pruned(&self) -> bool {
        self.dead.last().copied().unwrap_or(false)
    }

    fn count_into(&mut self, row: &mut [u128]) {
        if self.prefix.len() == self.n {
            row[self.cuts[self.n - 1]] += 1;
            return;
        }
        for v in 1..=self.n as u32 {
            if self.used[v as usize] {
                continue;
            }
            self.push(v);
            if !self.pruned() {
                self.count_into(row);
            }
            self.pop();
        }
    }
}

/// Restartable lexicographic stream of avoiders; clone it to restart from the same point.
#[derive(Clone)]
pub struct Avoiders<'a> {
    search: Search<'a>,
    /// Smallest value still to try at the current depth.
    next: u32,
    done: bool,
}

impl<'a> Avoiders<'a> {
    fn new(e: &'a Enumerator, n: usize) -> Self {
        Self { search: Search::new(e, n), next: 1, done: false }
    }
}

impl Iterator for Avoiders<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.search.n;
        if n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let s = &mut self.search;
            let candidate = (self.next..=n as u32).find(|&v| !s.used[v as usize]);
            match candidate {
                Some(v) => {
                    s.push(v);
                    if s.pruned() {
                        s.pop();
                        self.next = v + 1;
                    } else if s.prefix.len() == n {
                        let out = Permutation::from_values_unchecked(s.prefix.clone());
                        s.pop();
                        self.next = v + 1;
                        return Some(out);
                    } else {
                        self.next = 1;
                    }
                }
                None => match s.pop() {
                    Some(v) => self.next = v + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}
