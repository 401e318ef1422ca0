//! Acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed even
//! when nothing fails. Exits nonzero if any criterion fails. Counts are
//! compared exactly; the only tolerance is the wall-clock budget below.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use skewperm::classify::{self, block_bound_violations, monotonicity_violations};
use skewperm::maps::{self, move_last_before_rightmost_block, move_rightmost_big_to_end};
use skewperm::series::{rational_supercritical, Polynomial, SeriesKind, SupercriticalStatus};
use skewperm::{Enumerator, PatternSet, Permutation, RationalFunction, TruncatedSeries};

/// Budget for `count --patterns 132 --n-max 10` on one thread.
const CATALAN_RUNTIME_BUDGET: Duration = Duration::from_secs(60);
/// Largest length checked against the brute-force filter.
const NAIVE_ORACLE_MAX_N: usize = 7;

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(u32, &str, Check); 10] = [
        (1, "132 totals are Catalan; naive filter agrees; rows sum; fast", catalan_check),
        (2, "Av_{n,2}(132) = Av_{n,1}(132) for 2 <= n <= 10", two_blocks_equal_one_block),
        (3, "no monotonicity violations for covered patterns of length 3 and 4, n <= 9", monotone_when_covered),
        (4, "{123,132}: 2^(n-1) totals, Av_{n,1} = 1, Av_{n,2} = n-1, violations at every n >= 3", counterexample_set),
        (5, "coefficients of A_1^l equal Av_{n,l} for 132, 3142, 2143, 2413", power_rule),
        (
            6,
            "indecomposable part of the total series is the one-block series, and back, for length 3",
            indecomposable_identity,
        ),
        (
            7,
            "rightmost-big-to-end injects for every good pattern of length 3, 4; inverse move undoes it",
            good_injection,
        ),
        (8, "Av_n(q) = Av_n(q reversed) = Av_n(q complemented) for |q| <= 4, n <= 8", symmetry),
        (9, "supercriticality probes and Av_n <= n Av_{n,1}", supercritical_probes),
        (10, "CLI output byte-identical across thread counts and runs", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&p))));
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {title} [{detail}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id}: {title} [{detail}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(s: &str) -> PatternSet {
    PatternSet::parse(s).unwrap()
}

fn table(patterns: &str, n_max: usize) -> skewperm::CountTable {
    Enumerator::new(set(patterns)).count_table(n_max).unwrap()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewperm")).args(args).output().expect("binary runs")
}

/// Brute force: every arrangement of `1..=n`, every index subset of the pattern's size.
fn naive_count(pattern: &[u32], n: usize) -> u64 {
    (1..=n as u32)
        .permutations(n)
        .filter(|p| {
            !p.iter().combinations(pattern.len()).any(|sub| {
                sub.iter()
                    .tuple_combinations()
                    .zip(pattern.iter().tuple_combinations())
                    .all(|((a, b), (x, y)): ((&&u32, &&u32), (&u32, &u32))| (a < b) == (x < y))
            })
        })
        .count() as u64
}

fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

fn catalan_check() -> Result<String, String> {
    let start = Instant::now();
    let out = cli(&["count", "--patterns", "132", "--n-max", "10", "--by-blocks", "--format", "csv", "--threads", "1"]);
    let elapsed = start.elapsed();
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    ensure(elapsed < CATALAN_RUNTIME_BUDGET, || format!("took {elapsed:?}"))?;
    let text = String::from_utf8(out.stdout).unwrap();
    let expected: [u64; 11] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, line) in text.lines().skip(1).enumerate() {
        let fields: Vec<u64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let total = *fields.last().unwrap();
        ensure(total == expected[n], || format!("n = {n}: total {total}"))?;
        let row_sum: u64 = fields[1..fields.len() - 1].iter().sum();
        if n > 0 {
            ensure(row_sum == total, || format!("n = {n}: blocks sum to {row_sum}, total {total}"))?;
        }
        if n <= NAIVE_ORACLE_MAX_N {
            let naive = naive_count(&[1, 3, 2], n);
            ensure(naive == total, || format!("n = {n}: naive filter gives {naive}"))?;
        }
    }
    Ok(format!("n <= 10 in {:.2} s, naive oracle to n = {NAIVE_ORACLE_MAX_N}", elapsed.as_secs_f64()))
}

fn two_blocks_equal_one_block() -> Result<String, String> {
    let e = Enumerator::new(set("132"));
    for n in 2..=10 {
        let row = e.count_row(n).unwrap();
        ensure(row[0] == row[1], || format!("n = {n}: {} vs {}", row[0], row[1]))?;
    }
    let out = cli(&["verify", "--lemma", "132", "--n-max", "10"]);
    ensure(out.status.success(), || "map harness reported a counterexample".into())?;
    Ok("exact equality and bijective map, n = 2..10".into())
}

fn monotone_when_covered() -> Result<String, String> {
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    for k in [3, 4] {
        for q in Permutation::all_of_length(k) {
            if k == 4 && !classify::theorem_applicability(&q, 9).unwrap().is_covered() {
                skipped.push(q.to_string());
                continue;
            }
            let v = classify::check_monotonicity(&PatternSet::single(q.clone()).unwrap(), 9).unwrap();
            ensure(v.is_empty(), || format!("{q}: {} violations", v.len()))?;
            checked.push(q);
        }
    }
    Ok(format!("{} patterns checked; not covered: {}", checked.len(), skipped.join(", ")))
}

fn counterexample_set() -> Result<String, String> {
    let t = table("123,132", 12);
    for n in 1..=12 {
        let want = BigUint::one() << (n - 1);
        ensure(*t.total(n) == want, || format!("Av_{n} = {}", t.total(n)))?;
    }
    for n in 1..=10 {
        ensure(t.by_blocks(n, 1) == BigUint::one(), || format!("Av_{{{n},1}} = {}", t.by_blocks(n, 1)))?;
        if n >= 2 {
            let want = BigUint::from(n - 1);
            ensure(t.by_blocks(n, 2) == want, || format!("Av_{{{n},2}} = {}", t.by_blocks(n, 2)))?;
        }
    }
    let v = monotonicity_violations(&t);
    for n in 3..=12 {
        ensure(v.iter().any(|x| x.n == n), || format!("no violation at n = {n}"))?;
    }
    let out = cli(&["verify", "--lemma", "counterexample", "--n-max", "6"]);
    ensure(out.status.success(), || "CLI did not report the violations".into())?;
    Ok(format!("{} violations for n <= 12", v.len()))
}

fn power_rule() -> Result<String, String> {
    for q in ["132", "3142", "2143", "2413"] {
        let t = table(q, 8);
        let a1 = TruncatedSeries::from_counts(&t, SeriesKind::Blocks(1)).unwrap();
        for ell in 1..=4u32 {
            let p = a1.power(ell);
            for n in 0..=8 {
                let want = BigRational::from_integer(BigInt::from(t.by_blocks(n, ell as usize)));
                ensure(*p.coeff(n) == want, || format!("{q}, l = {ell}, n = {n}: {} vs {want}", p.coeff(n)))?;
            }
        }
    }
    Ok("n <= 8, l <= 4".into())
}

fn indecomposable_identity() -> Result<String, String> {
    let mut holds = Vec::new();
    let mut fails = Vec::new();
    for q in Permutation::all_of_length(3) {
        let t = Enumerator::new(PatternSet::single(q.clone()).unwrap()).count_table(10).unwrap();
        let total = TruncatedSeries::from_counts(&t, SeriesKind::Total).unwrap();
        let one_block = TruncatedSeries::from_counts(&t, SeriesKind::Blocks(1)).unwrap();
        let forward = total.indecomposable_part().unwrap() == one_block;
        let back = one_block.quasi_inverse().unwrap() == total;
        if forward && back {
            holds.push(q.to_string());
        } else {
            let n = (0..=10).find(|&n| total.indecomposable_part().unwrap().coeff(n) != one_block.coeff(n)).unwrap();
            fails.push(format!(
                "{q} (n = {n}: {} vs {})",
                total.indecomposable_part().unwrap().coeff(n),
                one_block.coeff(n)
            ));
        }
    }
    let detail = format!("holds for {}; fails for {}", holds.join(", "), fails.join(", "));
    ensure(fails.is_empty(), || detail.clone())?;
    Ok(detail)
}

fn good_injection() -> Result<String, String> {
    let good: Vec<Permutation> = [3, 4]
        .into_iter()
        .flat_map(Permutation::all_of_length)
        .filter(|q| q.is_skew_indecomposable() && q.is_good())
        .collect();
    ensure(!good.is_empty(), || "no good patterns found".into())?;
    for q in &good {
        for n in 2..=8 {
            let r = maps::verify_good_injection(q, n).unwrap();
            ensure(r.well_defined && r.injective && r.passed(), || r.summary())?;
        }
    }
    let mut two_block = 0;
    for n in 2..=8 {
        for p in Permutation::all_of_length(n).filter(|p| p.block_count() == 2) {
            let back = move_last_before_rightmost_block(&move_rightmost_big_to_end(&p).unwrap()).unwrap();
            ensure(back == p, || format!("{p} comes back as {back}"))?;
            two_block += 1;
        }
    }
    let names: Vec<String> = good.iter().map(ToString::to_string).collect();
    Ok(format!("good: {}; inverse checked on {two_block} two-block permutations", names.join(", ")))
}

fn symmetry() -> Result<String, String> {
    let mut patterns = 0;
    for k in 1..=4 {
        for q in Permutation::all_of_length(k) {
            let count = |p: &Permutation| {
                let e = Enumerator::new(PatternSet::single(p.clone()).unwrap());
                (1..=8).map(|n| e.count(n).unwrap()).collect::<Vec<_>>()
            };
            let base = count(&q);
            ensure(base == count(&q.reverse()), || format!("{q} vs its reverse"))?;
            ensure(base == count(&q.complement()), || format!("{q} vs its complement"))?;
            patterns += 1;
        }
    }
    Ok(format!("{patterns} patterns, n <= 8"))
}

fn supercritical_probes() -> Result<String, String> {
    // z / (1 - z)
    let g = RationalFunction::new(Polynomial::from_integers(&[0, 1]), Polynomial::from_integers(&[1, -1])).unwrap();
    let v = rational_supercritical(&g).unwrap();
    ensure(v.status == SupercriticalStatus::Supercritical, || format!("status {:?}", v.status))?;
    let pole = v.pole.as_ref().ok_or("no pole reported")?;
    ensure(pole.is_exact() && pole.lower.is_one(), || format!("pole in ({}, {}]", pole.lower, pole.upper))?;
    let w = v.witness.as_ref().ok_or("no witness")?;
    let recomputed = g.eval(&w.z0).ok_or("witness at a pole")?;
    ensure(w.value == recomputed && w.value > BigRational::one(), || format!("G({}) = {}", w.z0, w.value))?;

    // One-block 132 series to order 40 from the Catalan totals; its head must match enumeration.
    let catalan_series = TruncatedSeries::new((0..=40).map(|n| BigRational::from_integer(catalan(n).into())).collect());
    let a1 = catalan_series.indecomposable_part().unwrap();
    let enumerated = TruncatedSeries::from_counts(&table("132", 10), SeriesKind::Blocks(1)).unwrap();
    ensure(a1.truncate(10) == enumerated, || "one-block series disagrees with enumeration".into())?;
    let quarter = BigRational::new(1.into(), 4.into());
    let half = BigRational::new(1.into(), 2.into());
    let value = a1.eval_partial(&quarter);
    ensure(value < half && !value.is_zero(), || format!("partial sum {value}"))?;

    for q in Permutation::all_of_length(3) {
        ensure(classify::theorem_applicability(&q, 9).unwrap().is_covered(), || format!("{q} not covered"))?;
        let bad =
            block_bound_violations(&Enumerator::new(PatternSet::single(q.clone()).unwrap()).count_table(9).unwrap());
        ensure(bad.is_empty(), || format!("{q}: Av_n > n Av_{{n,1}} at n = {bad:?}"))?;
    }
    let approx = value.numer().to_string().parse::<f64>().unwrap() / value.denom().to_string().parse::<f64>().unwrap();
    Ok(format!("witness G({}) = {}; A_1(1/4) to order 40 = {approx:.12}", w.z0, w.value))
}

fn determinism() -> Result<String, String> {
    let runs: &[&[&str]] = &[
        &["count", "--patterns", "132", "--n-max", "10", "--by-blocks", "--format", "csv"],
        &["count", "--patterns", "132", "--n-max", "10", "--by-blocks", "--format", "json"],
        &["count", "--patterns", "123,132", "--n-max", "12", "--by-blocks"],
        &["verify", "--lemma", "132", "--n-max", "10", "--format", "json"],
        &["verify", "--lemma", "good", "--pattern", "3142", "--n-max", "8", "--format", "json"],
        &["verify", "--lemma", "counterexample", "--n-max", "10"],
        &["verify", "--lemma", "mongen", "--pattern", "1342", "--n-max", "9"],
        &["series", "--from-pattern", "132", "--n-max", "10", "indecomposable-part"],
        &["series", "--from-pattern", "3142", "--n-max", "8", "--kind", "blocks:1", "power", "--exp", "3"],
        &["series", "supercritical", "--num", "0,1", "--den", "1,-1", "--format", "json"],
        &["classify", "--all-of-length", "4", "--depth", "8", "--format", "csv"],
        &["classify", "--pattern", "1324", "--depth", "8", "--format", "json"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "auto", "4", "1"] {
            let mut full = args.to_vec();
            full.extend(["--threads", threads]);
            let out = cli(&full);
            ensure(out.status.code() == Some(0), || format!("{args:?} exited {:?}", out.status.code()))?;
            outputs.push(out.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{args:?} differs across runs"))?;
    }
    Ok(format!("{} commands x threads 1, auto, 4, 1", runs.len()))
}
