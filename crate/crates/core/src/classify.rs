//! Which patterns have provably monotone skew-block counts, empirical Wilf
//! classes, and the monotonicity scan over count tables.
//!
//! A pattern is first replaced by its reverse when it is skew decomposable
//! (a permutation and its reverse are never both skew decomposable). The
//! resulting form is covered when it does not start with 1, or does not end
//! with its length, or is Wilf-equivalent to a skew-indecomposable pattern
//! that satisfies one of those two conditions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{CountTable, Enumerator, PatternSet, DEFAULT_CEILING};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Empirical Wilf-equivalence depth used unless configured otherwise.
pub const DEFAULT_DEPTH: usize = 8;
/// Longest pattern length `wilf_classes` accepts by default.
pub const DEFAULT_MAX_CLASS_LENGTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    KnownTable,
    Empirical { depth: usize },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::KnownTable => f.write_str("known table"),
            Evidence::Empirical { depth } => write!(f, "empirical to n = {depth}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    FirstEntryNot1,
    LastEntryNotK,
    WilfEquivalentToCovered { witness: Permutation, evidence: Evidence },
    NotCovered,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::FirstEntryNot1 => f.write_str("first_entry_not_1"),
            Condition::LastEntryNotK => f.write_str("last_entry_not_k"),
            Condition::WilfEquivalentToCovered { witness, evidence } => {
                write!(f, "wilf_equivalent_to_covered(witness {witness}, evidence \"{evidence}\")")
            }
            Condition::NotCovered => f.write_str("not_covered"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApplicabilityReport {
    pub pattern: Permutation,
    pub skew_indecomposable_form: Permutation,
    pub condition: Condition,
    pub depth: usize,
    /// For uncovered patterns: what the counts show up to `depth`. Never a proof.
    pub observation: Option<String>,
}

impl ApplicabilityReport {
    pub fn is_covered(&self) -> bool {
        self.condition != Condition::NotCovered
    }
}

impl fmt::Display for ApplicabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pattern, self.condition)?;
        if self.skew_indecomposable_form != self.pattern {
            write!(f, " (via reverse {})", self.skew_indecomposable_form)?;
        }
        if let Some(obs) = &self.observation {
            write!(f, "; {obs}")?;
        }
        Ok(())
    }
}

/// Wilf equivalences accepted without computation.
///
/// Ships with one family: the increasing pattern `12...k` is equivalent to
/// `12...(k-2)k(k-1)`. Further pairs can be registered with [`KnownEquivalences::with_pair`].
#[derive(Clone, Debug)]
pub struct KnownEquivalences {
    monotone_family: bool,
    extra: Vec<(Permutation, Permutation)>,
}

impl Default for KnownEquivalences {
    fn default() -> Self {
        Self { monotone_family: true, extra: Vec::new() }
    }
}

impl KnownEquivalences {
    pub fn empty() -> Self {
        Self { monotone_family: false, extra: Vec::new() }
    }

    pub fn with_pair(mut self, a: Permutation, b: Permutation) -> Self {
        self.extra.push((a, b));
        self
    }

    /// Known partners of `q`, in registration order.
    pub fn partners(&self, q: &Permutation) -> Vec<Permutation> {
        let k = q.len();
        let mut out = Vec::new();
        if self.monotone_family && k >= 3 && *q == Permutation::identity(k) {
            let mut v: Vec<u32> = (1..=k as u32).collect();
            v.swap(k - 2, k - 1);
            out.push(Permutation::new(v).expect("swap keeps a permutation"));
        }
        for (a, b) in &self.extra {
            if a == q {
                out.push(b.clone());
            } else if b == q {
                out.push(a.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub ceiling: usize,
    pub max_class_length: usize,
    pub known: KnownEquivalences,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            max_class_length: DEFAULT_MAX_CLASS_LENGTH,
            known: KnownEquivalences::default(),
        }
    }
}

/// Skew-indecomposable and starts with something other than 1 or ends with something other than `k`.
fn satisfies_direct_condition(q: &Permutation) -> bool {
    q.is_skew_indecomposable() && (q.first() != Some(1) || q.last() != Some(q.len() as u32))
}

pub fn theorem_applicability(q: &Permutation, depth: usize) -> Result<ApplicabilityReport> {
    theorem_applicability_with(q, depth, &ClassifyOptions::default())
}

pub fn theorem_applicability_with(
    q: &Permutation,
    depth: usize,
    opts: &ClassifyOptions,
) -> Result<ApplicabilityReport> {
    let k = q.len();
    if k < 2 {
        return Err(Error::TooShort { min: 2, found: k });
    }
    if depth < k {
        return Err(Error::Table(format!("comparison depth {depth} is shorter than the pattern length {k}")));
    }
    if depth > opts.ceiling {
        return Err(Error::CeilingExceeded { n: depth, ceiling: opts.ceiling });
    }
    let form = if q.is_skew_indecomposable() { q.clone() } else { q.reverse() };
    let condition = if form.first() != Some(1) {
        Condition::FirstEntryNot1
    } else if form.last() != Some(k as u32) {
        Condition::LastEntryNotK
    } else if let Some(witness) = opts.known.partners(&form).into_iter().find(satisfies_direct_condition) {
        Condition::WilfEquivalentToCovered { witness, evidence: Evidence::KnownTable }
    } else if let Some(witness) = empirical_witness(&form, depth, opts.ceiling)? {
        Condition::WilfEquivalentToCovered { witness, evidence: Evidence::Empirical { depth } }
    } else {
        Condition::NotCovered
    };
    let observation = match condition {
        Condition::NotCovered => {
            let violations = check_monotonicity_with(&PatternSet::single(q.clone())?, depth, opts.ceiling)?;
            Some(if violations.is_empty() {
                format!("no monotonicity violations for n <= {depth} (numerical observation only)")
            } else {
                format!("{} monotonicity violations for n <= {depth}", violations.len())
            })
        }
        _ => None,
    };
    Ok(ApplicabilityReport { pattern: q.clone(), skew_indecomposable_form: form, condition, depth, observation })
}

/// Lexicographically first directly covered pattern of the same length whose
/// counts agree with `q` for `n = 1..=depth`.
fn empirical_witness(q: &Permutation, depth: usize, ceiling: usize) -> Result<Option<Permutation>> {
    let mut candidates: Vec<Permutation> =
        Permutation::all_of_length(q.len()).filter(|c| c != q && satisfies_direct_condition(c)).collect();
    let target = Enumerator::new(PatternSet::single(q.clone())?).with_ceiling(ceiling);
    for n in 1..=depth {
        if candidates.is_empty() {
            break;
        }
        let want = target.count(n)?;
        let keep: Vec<bool> = candidates
            .par_iter()
            .map(|c| {
                let e = Enumerator::new(PatternSet::single(c.clone())?).with_ceiling(ceiling);
                Ok(e.count(n)? == want)
            })
            .collect::<Result<_>>()?;
        let mut it = keep.into_iter();
        candidates.retain(|_| it.next().unwrap());
    }
    Ok(candidates.into_iter().next())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfClass {
    pub id: usize,
    /// Sorted lexicographically.
    pub patterns: Vec<Permutation>,
    /// `Av_1..Av_depth`.
    #[serde(serialize_with = "ser_counts")]
    pub counts: Vec<BigUint>,
    /// The class is a single orbit under reverse and complement.
    pub explained_by_symmetry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfClassification {
    pub k: usize,
    pub depth: usize,
    pub evidence: String,
    pub classes: Vec<WilfClass>,
}

fn ser_counts<S: serde::Serializer>(counts: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums: Vec<_> = counts.iter().map(crate::io::uint_number).collect();
    nums.serialize(s)
}

impl WilfClassification {
    pub fn class_of(&self, q: &Permutation) -> Option<&WilfClass> {
        self.classes.iter().find(|c| c.patterns.contains(q))
    }

    /// CSV `pattern,class_id,av_1,...,av_depth`, patterns in lexicographic order.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["pattern".to_string(), "class_id".to_string()];
        header.extend((1..=self.depth).map(|n| format!("av_{n}")));
        w.write_record(&header).expect("in-memory write");
        let mut rows: Vec<(&Permutation, &WilfClass)> =
            self.classes.iter().flat_map(|c| c.patterns.iter().map(move |p| (p, c))).collect();
        rows.sort_by(|a, b| a.0.cmp(b.0));
        for (p, c) in rows {
            let mut record = vec![p.to_string(), c.id.to_string()];
            record.extend(c.counts.iter().map(ToString::to_string));
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("Wilf classes of length-{} patterns ({})\n", self.k, self.evidence);
        for c in &self.classes {
            let members: Vec<String> = c.patterns.iter().map(ToString::to_string).collect();
            let counts: Vec<String> = c.counts.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "class {}: {{{}}} counts {}{}\n",
                c.id,
                members.join(", "),
                counts.join(","),
                if c.explained_by_symmetry { " [symmetry]" } else { "" }
            ));
        }
        out
    }
}

pub fn wilf_classes(k: usize, depth: usize) -> Result<WilfClassification> {
    wilf_classes_with(k, depth, &ClassifyOptions::default())
}

pub fn wilf_classes_with(k: usize, depth: usize, opts: &ClassifyOptions) -> Result<WilfClassification> {
    if k < 2 {
        return Err(Error::TooShort { min: 2, found: k });
    }
    if k > opts.max_class_length {
        return Err(Error::CeilingExceeded { n: k, ceiling: opts.max_class_length });
    }
    if depth > opts.ceiling {
        return Err(Error::CeilingExceeded { n: depth, ceiling: opts.ceiling });
    }
    let patterns: Vec<Permutation> = Permutation::all_of_length(k).collect();
    let vectors: Vec<Vec<BigUint>> = patterns
        .par_iter()
        .map(|q| {
            let e = Enumerator::new(PatternSet::single(q.clone())?).with_ceiling(opts.ceiling);
            (1..=depth).map(|n| e.count(n)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut groups: BTreeMap<Vec<BigUint>, Vec<Permutation>> = BTreeMap::new();
    for (q, v) in patterns.into_iter().zip(vectors) {
        groups.entry(v).or_default().push(q);
    }
    let mut classes: Vec<(Vec<Permutation>, Vec<BigUint>)> = groups.into_iter().map(|(v, ps)| (ps, v)).collect();
    classes.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
    let classes = classes
        .into_iter()
        .enumerate()
        .map(|(id, (patterns, counts))| {
            let mut orbit: Vec<Permutation> = patterns[0].symmetry_orbit().to_vec();
            orbit.sort();
            orbit.dedup();
            let explained_by_symmetry = orbit == patterns;
            WilfClass { id, patterns, counts, explained_by_symmetry }
        })
        .collect();
    Ok(WilfClassification {
        k,
        depth,
        evidence: format!("empirical to n = {depth}; agreement is evidence, not proof"),
        classes,
    })
}

/// A place where one more skew block means more avoiders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub n: usize,
    pub ell: usize,
    /// `Av_{n,l}`.
    #[serde(serialize_with = "ser_uint")]
    pub with_ell: BigUint,
    /// `Av_{n,l+1}`.
    #[serde(serialize_with = "ser_uint")]
    pub with_ell_plus_one: BigUint,
}

fn ser_uint<S: serde::Serializer>(c: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::io::uint_number(c).serialize(s)
}

/// Every `(n, l)` in the table with `Av_{n,l+1} > Av_{n,l}`, ordered by `n` then `l`.
pub fn monotonicity_violations(table: &CountTable) -> Vec<MonotonicityViolation> {
    let mut out = Vec::new();
    for n in 1..=table.n_max() {
        for ell in 1..n {
            let lo = table.by_blocks(n, ell);
            let hi = table.by_blocks(n, ell + 1);
            if hi > lo {
                out.push(MonotonicityViolation { n, ell, with_ell: lo, with_ell_plus_one: hi });
            }
        }
    }
    out
}

pub fn check_monotonicity(set: &PatternSet, n_max: usize) -> Result<Vec<MonotonicityViolation>> {
    check_monotonicity_with(set, n_max, DEFAULT_CEILING)
}

pub fn check_monotonicity_with(set: &PatternSet, n_max: usize, ceiling: usize) -> Result<Vec<MonotonicityViolation>> {
    let table = Enumerator::new(set.clone()).with_ceiling(ceiling).count_table(n_max)?;
    Ok(monotonicity_violations(&table))
}

/// Lengths `n` at which `Av_n > n * Av_{n,1}`.
pub fn block_bound_violations(table: &CountTable) -> Vec<usize> {
    (1..=table.n_max()).filter(|&n| *table.total(n) > table.by_blocks(n, 1) * BigUint::from(n)).collect()
}
