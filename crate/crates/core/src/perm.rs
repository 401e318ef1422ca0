//! Permutations in one-line notation and their structural predicates.
//!
//! A [`Permutation`] doubles as a pattern. Containment is decided by a
//! depth-first search over pattern positions: each pattern entry is matched to
//! a text entry whose value lies strictly between the values already matched to
//! its nearest smaller and nearest larger pattern entries, so branches that
//! cannot be order-isomorphic are cut immediately.
//!
//! Skew structure: a cut after position `j` of a permutation of `1..=n` is a
//! skew cut exactly when the first `j` entries are the `j` largest values, i.e.
//! when their minimum equals `n - j + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is valid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let text = join_values(&values);
        validate(values.iter().map(|&v| i64::from(v)), &text)?;
        Ok(Self { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (1..=n as u32).collect() }
    }

    /// Parses either compact digits (`"132"`) or a comma-separated list
    /// (`"10,2,3,4,5,6,7,8,9,1"`).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let raw: Vec<i64> = if trimmed.contains(',') {
            trimmed
                .split(',')
                .map(|item| {
                    let item = item.trim();
                    item.parse::<i64>().map_err(|_| Error::Parse {
                        text: text.to_string(),
                        reason: format!("`{item}` is not an integer"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(i64::from)
                        .ok_or_else(|| Error::Parse { text: text.to_string(), reason: format!("`{c}` is not a digit") })
                })
                .collect::<Result<_>>()?
        };
        validate(raw.iter().copied(), text)?;
        Ok(Self { values: raw.into_iter().map(|v| v as u32).collect() })
    }

    /// Relabels distinct values by rank, producing the order-isomorphic permutation.
    pub fn standardize(values: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by_key(|&i| values[i]);
        let mut out = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Self::from_values_unchecked(out)
    }

    /// Every permutation of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> AllPermutations {
        AllPermutations { next: Some(Self::identity(n)) }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.values.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.values.last().copied()
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        Matcher::new(pattern.values(), false).matches(&self.values)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn reverse(&self) -> Self {
        Self { values: self.values.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Self { values: self.values.iter().map(|&v| top - v).collect() }
    }

    /// The four images of `self` under reverse and complement, in the order
    /// identity, reverse, complement, reverse-complement.
    pub fn symmetry_orbit(&self) -> [Permutation; 4] {
        let r = self.reverse();
        let c = self.complement();
        let rc = r.complement();
        [self.clone(), r, c, rc]
    }

    pub fn skew_decompose(&self) -> Result<SkewDecomposition> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let n = self.len();
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut start = 0;
        for end in skew_cut_ends(&self.values) {
            let offset = (n - end) as u32;
            let block = self.values[start..end].iter().map(|&v| v - offset).collect();
            blocks.push(Self::from_values_unchecked(block));
            offsets.push(offset);
            start = end;
        }
        Ok(SkewDecomposition { blocks, offsets })
    }

    /// Number of skew blocks; zero for the empty permutation.
    pub fn block_count(&self) -> usize {
        skew_cut_ends(&self.values).count()
    }

    pub fn is_skew_indecomposable(&self) -> bool {
        self.block_count() == 1
    }

    /// A pattern is good when no segment ending just before its last entry
    /// consists of exactly the values `1..=i`.
    pub fn is_good(&self) -> bool {
        let k = self.len();
        if k == 0 {
            return false;
        }
        let mut max = 0;
        for (i, &v) in self.values[..k - 1].iter().rev().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                return false;
            }
        }
        true
    }

    /// Stacks blocks so that every value of block `i` exceeds every value of block `j > i`.
    pub fn skew_sum(blocks: &[Permutation]) -> Self {
        let total: usize = blocks.iter().map(Permutation::len).sum();
        let mut below = total;
        let mut values = Vec::with_capacity(total);
        for block in blocks {
            below -= block.len();
            values.extend(block.values.iter().map(|&v| v + below as u32));
        }
        Self::from_values_unchecked(values)
    }

    /// Compact digits when every value is at most 9, comma-separated otherwise.
    pub fn to_notation(&self) -> String {
        if self.values.iter().all(|&v| v <= 9) {
            self.values.iter().map(|v| char::from(b'0' + *v as u8)).collect()
        } else {
            join_values(&self.values)
        }
    }
}

fn join_values(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn validate(values: impl ExactSizeIterator<Item = i64>, text: &str) -> Result<()> {
    let n = values.len();
    let mut seen = vec![false; n + 1];
    for v in values {
        let reason = if v <= 0 {
            Some(format!("value {v} is not positive"))
        } else if v as usize > n {
            Some(format!("value {v} exceeds the length {n}"))
        } else if seen[v as usize] {
            Some(format!("value {v} repeated"))
        } else {
            seen[v as usize] = true;
            None
        };
        if let Some(reason) = reason {
            return Err(Error::Parse { text: text.to_string(), reason });
        }
    }
    Ok(())
}

/// End positions (exclusive) of the skew blocks of a permutation of `1..=n`.
fn skew_cut_ends(values: &[u32]) -> impl Iterator<Item = usize> + '_ {
    let n = values.len();
    let mut min = u32::MAX;
    values.iter().enumerate().filter_map(move |(j, &v)| {
        min = min.min(v);
        // prefix of length j + 1 holds the top j + 1 values
        (min as usize == n - j).then_some(j + 1)
    })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_notation())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_notation())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Lexicographic iterator over all permutations of one length.
#[derive(Clone, Debug)]
pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut v = current.values.clone();
        if let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
            self.next = Some(Permutation { values: v });
        }
        Some(current)
    }
}

/// The unique ordered list of skew blocks of a nonempty permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewDecomposition {
    blocks: Vec<Permutation>,
    offsets: Vec<u32>,
}

impl SkewDecomposition {
    /// Blocks, each standardized to its own length.
    pub fn blocks(&self) -> &[Permutation] {
        &self.blocks
    }

    /// Value offset of each block in the original permutation.
    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Position in the original permutation where each block begins.
    pub fn starts(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |pos, b| {
                let start = *pos;
                *pos += b.len();
                Some(start)
            })
            .collect()
    }

    pub fn reassemble(&self) -> Permutation {
        let values = self
            .blocks
            .iter()
            .zip(&self.offsets)
            .flat_map(|(b, &off)| b.values.iter().map(move |&v| v + off))
            .collect();
        Permutation::from_values_unchecked(values)
    }
}

/// Order-isomorphism search for one pattern.
///
/// Pattern positions are visited in a fixed plan. When `anchored`, the last
/// pattern entry is pinned to the last text entry, which answers "does an
/// occurrence end here?" for incremental prefix checks.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    plan: Vec<Step>,
    anchored: bool,
}

#[derive(Clone, Copy, Debug)]
struct Step {
    pos: usize,
    below: Option<usize>,
    above: Option<usize>,
}

impl Matcher {
    pub(crate) fn new(pattern: &[u32], anchored: bool) -> Self {
        let k = pattern.len();
        let order: Vec<usize> =
            if anchored && k > 0 { std::iter::once(k - 1).chain(0..k - 1).collect() } else { (0..k).collect() };
        let mut plan = Vec::with_capacity(k);
        for (s, &pos) in order.iter().enumerate() {
            let q = pattern[pos];
            let placed = &order[..s];
            let below = placed.iter().copied().filter(|&r| pattern[r] < q).max_by_key(|&r| pattern[r]);
            let above = placed.iter().copied().filter(|&r| pattern[r] > q).min_by_key(|&r| pattern[r]);
            plan.push(Step { pos, below, above });
        }
        Self { plan, anchored }
    }

    pub(crate) fn len(&self) -> usize {
        self.plan.len()
    }

    pub(crate) fn matches(&self, text: &[u32]) -> bool {
        let k = self.plan.len();
        let mut idx = vec![0usize; k];
        let mut val = vec![0u32; k];
        self.matches_with(text, &mut idx, &mut val)
    }

    /// Same as `matches`, reusing caller-provided scratch of length at least `len()`.
    pub(crate) fn matches_with(&self, text: &[u32], idx: &mut [usize], val: &mut [u32]) -> bool {
        let k = self.plan.len();
        if k == 0 {
            return true;
        }
        if k > text.len() {
            return false;
        }
        if self.anchored {
            idx[k - 1] = text.len() - 1;
            val[k - 1] = text[text.len() - 1];
            self.search(text, 1, idx, val)
        } else {
            self.search(text, 0, idx, val)
        }
    }

    fn search(&self, text: &[u32], step: usize, idx: &mut [usize], val: &mut [u32]) -> bool {
        let Some(st) = self.plan.get(step) else {
            return true;
        };
        let k = self.plan.len();
        let r = st.pos;
        let lo = st.below.map_or(0, |b| val[b]);
        let hi = st.above.map_or(u32::MAX, |a| val[a]);
        let start = if r == 0 { 0 } else { idx[r - 1] + 1 };
        let end = text.len() + 1 + r - k;
        for i in start..end {
            let v = text[i];
            if v > lo && v < hi {
                idx[r] = i;
                val[r] = v;
                if self.search(text, step + 1, idx, val) {
                    return true;
                }
            }
        }
        false
    }
}
