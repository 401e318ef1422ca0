//! Maps between two-block and one-block avoiders, and exhaustive harnesses
//! that check their claimed properties.
//!
//! * [`move_max_to_end`] moves the largest entry to the last position.
//! * [`move_rightmost_big_to_end`] moves the last entry of the first skew block
//!   of a two-block permutation to the last position.
//! * [`move_last_before_rightmost_block`] reinserts the last entry immediately
//!   to the left of the rightmost skew block of the remaining entries. It
//!   undoes both of the moves above on two-block inputs.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{Enumerator, PatternSet, DEFAULT_CEILING};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub fn move_max_to_end(p: &Permutation) -> Permutation {
    let n = p.len() as u32;
    let mut values: Vec<u32> = p.values().iter().copied().filter(|&v| v != n).collect();
    if n > 0 {
        values.push(n);
    }
    Permutation::new(values).expect("moving an entry keeps a permutation")
}

pub fn move_last_before_rightmost_block(w: &Permutation) -> Result<Permutation> {
    let n = w.len();
    if n < 2 {
        return Err(Error::TooShort { min: 2, found: n });
    }
    let (prefix, last) = w.values().split_at(n - 1);
    let starts = Permutation::standardize(prefix).skew_decompose()?.starts();
    let cut = *starts.last().unwrap();
    let mut values = Vec::with_capacity(n);
    values.extend_from_slice(&prefix[..cut]);
    values.push(last[0]);
    values.extend_from_slice(&prefix[cut..]);
    Permutation::new(values)
}

pub fn move_rightmost_big_to_end(p: &Permutation) -> Result<Permutation> {
    let found = p.block_count();
    if found != 2 {
        return Err(Error::NotTwoBlocks { found });
    }
    let starts = p.skew_decompose()?.starts();
    let big_end = starts[1] - 1;
    let mut values = p.values().to_vec();
    let x = values.remove(big_end);
    values.push(x);
    Permutation::new(values)
}

/// One input on which a claimed property failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: Permutation,
    pub image: Option<Permutation>,
    pub diagnosis: String,
}

/// Evidence gathered by an exhaustive harness at one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub map: String,
    pub pattern: Permutation,
    pub n: usize,
    pub domain_size: usize,
    pub image_size: usize,
    pub codomain_size: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub surjectivity_claimed: bool,
    /// False when the harness ran on a pattern outside the map's hypotheses.
    pub within_hypotheses: bool,
    pub note: Option<String>,
    /// Sorted by input.
    pub counterexamples: Vec<Counterexample>,
}

impl MapReport {
    /// Every claimed property holds.
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut s = format!(
            "{} on Av_{{{n},2}}({q}) -> Av_{{{n},1}}({q}): domain {}, image {}, codomain {}; \
             well defined: {}, injective: {}, surjective: {}{} => {verdict}",
            self.map,
            self.domain_size,
            self.image_size,
            self.codomain_size,
            yes_no(self.well_defined),
            yes_no(self.injective),
            yes_no(self.surjective),
            if self.surjectivity_claimed { "" } else { " (not claimed)" },
            n = self.n,
            q = self.pattern,
        );
        if let Some(note) = &self.note {
            s.push_str(&format!("\n  note: {note}"));
        }
        for c in &self.counterexamples {
            match &c.image {
                Some(img) => s.push_str(&format!("\n  {} -> {}: {}", c.input, img, c.diagnosis)),
                None => s.push_str(&format!("\n  {}: {}", c.input, c.diagnosis)),
            }
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Knobs shared by the harnesses.
#[derive(Clone, Copy, Debug)]
pub struct HarnessOptions {
    pub ceiling: usize,
    /// Run even when the pattern violates the map's hypotheses; the report is labelled.
    pub diagnostic: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        Self { ceiling: DEFAULT_CEILING, diagnostic: false }
    }
}

/// Checks that moving the rightmost big entry sends two-block avoiders of a
/// good skew-indecomposable `q` injectively into one-block avoiders.
pub fn verify_good_injection(q: &Permutation, n: usize) -> Result<MapReport> {
    verify_good_injection_with(q, n, HarnessOptions::default())
}

pub fn verify_good_injection_with(q: &Permutation, n: usize, opts: HarnessOptions) -> Result<MapReport> {
    let mut violation = None;
    if !q.is_skew_indecomposable() {
        violation = Some(Error::NotSkewIndecomposable { pattern: q.to_string() });
    } else if !q.is_good() {
        violation = Some(Error::NotGood { pattern: q.to_string() });
    }
    if let (Some(err), false) = (&violation, opts.diagnostic) {
        return Err(err.clone());
    }
    let mut report = run_harness("rightmost big entry to end", q, n, opts.ceiling, false, |p| {
        move_rightmost_big_to_end(p).expect("domain has two blocks")
    })?;
    if let Some(err) = violation {
        report.within_hypotheses = false;
        report.note = Some(format!("outside the good-pattern hypotheses ({err}); diagnostic run only"));
    }
    Ok(report)
}

/// Checks that moving the maximum to the end is a bijection from two-block
/// to one-block 132-avoiders, and that every one-block 132-avoider ends in `n`.
pub fn verify_max_to_end_bijection(n: usize) -> Result<MapReport> {
    verify_max_to_end_bijection_with(n, HarnessOptions::default())
}

pub fn verify_max_to_end_bijection_with(n: usize, opts: HarnessOptions) -> Result<MapReport> {
    match n {
        0 => return Err(Error::TooShort { min: 2, found: 0 }),
        1 => return Err(Error::StrictCase),
        _ => {}
    }
    let q = Permutation::parse("132").expect("literal pattern");
    let mut report = run_harness("maximum to end", &q, n, opts.ceiling, true, move_max_to_end)?;
    let e = Enumerator::new(PatternSet::single(q)?).with_ceiling(opts.ceiling);
    for w in e.avoiders_with_blocks(n, 1)? {
        if w.last() != Some(n as u32) {
            report.counterexamples.push(Counterexample {
                input: w,
                image: None,
                diagnosis: "skew-indecomposable 132-avoider does not end in its maximum".into(),
            });
        }
    }
    report.counterexamples.sort_by(|a, b| a.input.cmp(&b.input));
    Ok(report)
}

fn run_harness(
    name: &str,
    q: &Permutation,
    n: usize,
    ceiling: usize,
    surjectivity_claimed: bool,
    map: impl Fn(&Permutation) -> Permutation + Sync,
) -> Result<MapReport> {
    let e = Enumerator::new(PatternSet::single(q.clone())?).with_ceiling(ceiling);
    let domain: Vec<Permutation> = e.avoiders_with_blocks(n, 2)?.collect();
    let codomain: BTreeSet<Permutation> = e.avoiders_with_blocks(n, 1)?.collect();

    let checked: Vec<(Permutation, Vec<String>)> = domain
        .par_iter()
        .map(|p| {
            let image = map(p);
            let mut problems = Vec::new();
            if image.contains(q) {
                problems.push(format!("image contains {q}"));
            }
            if image.block_count() != 1 {
                problems.push(format!("image has {} skew blocks", image.block_count()));
            }
            if move_last_before_rightmost_block(&image).ok().as_ref() != Some(p) {
                problems.push("reinsertion does not recover the input".into());
            }
            (image, problems)
        })
        .collect();

    let mut counterexamples = Vec::new();
    let mut images = BTreeSet::new();
    let mut well_defined = true;
    for (p, (image, problems)) in domain.iter().zip(checked) {
        well_defined &= !problems.iter().any(|m| m.starts_with("image"));
        if !images.insert(image.clone()) {
            counterexamples.push(Counterexample {
                input: p.clone(),
                image: Some(image.clone()),
                diagnosis: "image already hit by an earlier input".into(),
            });
        }
        if !problems.is_empty() {
            counterexamples.push(Counterexample {
                input: p.clone(),
                image: Some(image),
                diagnosis: problems.join("; "),
            });
        }
    }
    let injective = images.len() == domain.len();
    let surjective = images == codomain;
    if surjectivity_claimed && !surjective {
        let missed = codomain.difference(&images).next().cloned();
        if let Some(w) = missed {
            counterexamples.push(Counterexample { input: w, image: None, diagnosis: "not in the image".into() });
        }
    }
    counterexamples.sort_by(|a, b| a.input.cmp(&b.input));

    Ok(MapReport {
        map: name.to_string(),
        pattern: q.clone(),
        n,
        domain_size: domain.len(),
        image_size: images.len(),
        codomain_size: codomain.len(),
        well_defined,
        injective,
        surjective,
        surjectivity_claimed,
        within_hypotheses: true,
        note: None,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn max_to_end() {
        assert_eq!(move_max_to_end(&p("534612")), p("534126"));
        assert_eq!(move_max_to_end(&p("1243")), p("1234"));
        assert_eq!(move_max_to_end(&p("2134")), p("2134"));
        assert_eq!(move_max_to_end(&p("312")), p("123"));
        assert_eq!(move_max_to_end(&Permutation::empty()), Permutation::empty());
    }

    #[test]
    fn reinsertion() {
        assert_eq!(move_last_before_rightmost_block(&p("534126")).unwrap(), p("534612"));
        assert_eq!(move_last_before_rightmost_block(&p("12")).unwrap(), p("21"));
        assert!(matches!(move_last_before_rightmost_block(&p("1")), Err(Error::TooShort { .. })));
    }

    #[test]
    fn rightmost_big() {
        assert_eq!(move_rightmost_big_to_end(&p("3412")).unwrap(), p("3124"));
        assert_eq!(move_rightmost_big_to_end(&p("534612")).unwrap(), p("534126"));
        assert_eq!(move_rightmost_big_to_end(&p("3142")), Err(Error::NotTwoBlocks { found: 1 }));
        assert_eq!(move_rightmost_big_to_end(&p("321")), Err(Error::NotTwoBlocks { found: 3 }));
        let q = p("3142");
        assert!(p("3412").avoids(&q) && p("3124").avoids(&q));
    }

    #[test]
    fn harness_132() {
        let r = verify_max_to_end_bijection(6).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!((r.domain_size, r.image_size), (42, 42));
        assert!(r.surjective && r.injective && r.well_defined);
        let r = verify_max_to_end_bijection(2).unwrap();
        assert_eq!((r.domain_size, r.codomain_size), (1, 1));
        assert_eq!(verify_max_to_end_bijection(1), Err(Error::StrictCase));
    }

    #[test]
    fn harness_good() {
        let r = verify_good_injection(&p("132"), 6).unwrap();
        assert!(r.passed());
        assert_eq!((r.domain_size, r.image_size, r.codomain_size), (42, 42, 42));
        assert!(r.surjective);
        let r = verify_good_injection(&p("3142"), 7).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(!r.surjectivity_claimed);
        assert_eq!(verify_good_injection(&p("1324"), 5), Err(Error::NotGood { pattern: "1324".into() }));
        assert!(matches!(verify_good_injection(&p("321"), 5), Err(Error::NotSkewIndecomposable { .. })));
    }

    #[test]
    fn diagnostic_run_is_labelled() {
        let opts = HarnessOptions { diagnostic: true, ..Default::default() };
        let r = verify_good_injection_with(&p("1324"), 6, opts).unwrap();
        assert!(!r.within_hypotheses);
        assert!(r.note.as_deref().unwrap().contains("outside the good-pattern hypotheses"));
    }
}
