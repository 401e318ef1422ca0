//! One function per subcommand. Each returns the full output as a string so
//! the caller decides where it goes; nothing here depends on thread count.

use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;
use skewperm::classify::{self, ClassifyOptions, Condition};
use skewperm::maps::{self, HarnessOptions, MapReport};
use skewperm::series::{self, Dominance, Polynomial, SeriesKind, SupercriticalVerdict};
use skewperm::{CountTable, Enumerator, Error, PatternSet, Permutation, RationalFunction, TruncatedSeries};

use crate::{ClassifyArgs, CountArgs, Emission, Failure, Format, Lemma, RunConfig, SeriesArgs, SeriesOp, VerifyArgs};

type Outcome = Result<Emission, Failure>;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_csv(command: &str) -> Failure {
    Failure::usage(format!("csv output is not available for `{command}`; use text or json"))
}

fn table(patterns: &str, n_max: usize, config: RunConfig) -> Result<CountTable, Failure> {
    let set = PatternSet::parse(patterns)?;
    Ok(Enumerator::new(set).with_ceiling(config.ceiling).count_table(n_max)?)
}

pub fn count(args: &CountArgs, config: RunConfig) -> Outcome {
    let t = table(&args.patterns, args.n_max, config)?;
    Ok(Emission::ok(match config.format {
        Format::Csv => t.to_csv(args.by_blocks),
        Format::Json => format!("{}\n", t.to_json()),
        Format::Text => t.to_text(args.by_blocks, config.ceiling),
    }))
}

pub fn verify(args: &VerifyArgs, config: RunConfig) -> Outcome {
    if config.format == Format::Csv {
        return Err(no_csv("verify"));
    }
    let opts = HarnessOptions { ceiling: config.ceiling, diagnostic: args.diagnostic };
    match args.lemma {
        Lemma::Max132 => {
            if args.n_max < 2 {
                maps::verify_max_to_end_bijection_with(args.n_max, opts)?;
            }
            let reports = (2..=args.n_max)
                .map(|n| maps::verify_max_to_end_bijection_with(n, opts))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(map_reports("132", args.n_max, &reports, config.format))
        }
        Lemma::Good => {
            let q = required_pattern(args)?;
            if args.n_max < 2 {
                return Err(Error::TooShort { min: 2, found: args.n_max }.into());
            }
            let reports = (2..=args.n_max)
                .map(|n| maps::verify_good_injection_with(&q, n, opts))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(map_reports("good", args.n_max, &reports, config.format))
        }
        Lemma::Mongen => mongen(args, config),
        Lemma::Counterexample => counterexample(args, config),
    }
}

fn required_pattern(args: &VerifyArgs) -> Result<Permutation, Failure> {
    let text = args.pattern.as_deref().ok_or_else(|| Failure::usage("this lemma needs --pattern"))?;
    Ok(Permutation::parse(text)?)
}

fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn map_reports(lemma: &str, n_max: usize, reports: &[MapReport], format: Format) -> Emission {
    let passed = reports.iter().all(MapReport::passed);
    let body = if format == Format::Json {
        to_json(&json!({ "lemma": lemma, "n_max": n_max, "passed": passed, "reports": reports }))
    } else {
        let mut s = String::new();
        for r in reports {
            s.push_str(&r.summary());
            s.push('\n');
        }
        s.push_str(&format!("verdict: {}\n", verdict_word(passed)));
        s
    };
    Emission::verdict(body, passed)
}

fn mongen(args: &VerifyArgs, config: RunConfig) -> Outcome {
    let q = required_pattern(args)?;
    let opts = ClassifyOptions { ceiling: config.ceiling, ..ClassifyOptions::default() };
    let report = classify::theorem_applicability_with(&q, args.n_max, &opts)?;
    let t = Enumerator::new(PatternSet::single(q.clone())?).with_ceiling(config.ceiling).count_table(args.n_max)?;
    let violations = classify::monotonicity_violations(&t);
    let bound = classify::block_bound_violations(&t);
    let passed = violations.is_empty();
    let body = if config.format == Format::Json {
        to_json(&json!({
            "lemma": "mongen",
            "pattern": q,
            "n_max": args.n_max,
            "applicability": report,
            "violations": violations,
            "block_bound_violations": bound,
            "passed": passed,
        }))
    } else {
        let mut s = format!("monotonicity of Av_{{n,l}}({q}) in l for n <= {}\n", args.n_max);
        s.push_str(&format!("applicability: {report}\n"));
        if !report.is_covered() {
            s.push_str("note: outside the covered cases; the scan below is an observation, not a proof\n");
        }
        s.push_str(&violation_lines(&violations));
        s.push_str(&format!(
            "Av_n <= n * Av_{{n,1}}: {}\n",
            if bound.is_empty() { "holds".to_string() } else { format!("fails at n = {bound:?}") }
        ));
        s.push_str(&format!("verdict: {}\n", verdict_word(passed)));
        s
    };
    Ok(Emission::verdict(body, passed))
}

fn violation_lines(violations: &[classify::MonotonicityViolation]) -> String {
    if violations.is_empty() {
        return "monotonicity violations: none\n".into();
    }
    let mut s = format!("monotonicity violations: {}\n", violations.len());
    for v in violations {
        s.push_str(&format!(
            "  n = {}: Av_{{{n},{l}}} = {} < Av_{{{n},{l1}}} = {}\n",
            v.n,
            v.with_ell,
            v.with_ell_plus_one,
            n = v.n,
            l = v.ell,
            l1 = v.ell + 1
        ));
    }
    s
}

fn counterexample(args: &VerifyArgs, config: RunConfig) -> Outcome {
    let t = table(&args.patterns, args.n_max, config)?;
    let violations = classify::monotonicity_violations(&t);
    // Reproducing the violation is the expected outcome.
    let passed = !violations.is_empty();
    let body = if config.format == Format::Json {
        to_json(&json!({
            "lemma": "counterexample",
            "patterns": t.pattern_set(),
            "n_max": args.n_max,
            "violations": violations,
            "passed": passed,
        }))
    } else {
        let mut s = format!("monotonicity scan of Av(S) for S = {{{}}}, n <= {}\n", t.pattern_set(), args.n_max);
        s.push_str(&violation_lines(&violations));
        s.push_str(&format!(
            "verdict: {} ({})\n",
            verdict_word(passed),
            if passed { "violations found, as expected" } else { "expected violations were not found" }
        ));
        s
    };
    Ok(Emission::verdict(body, passed))
}

fn parse_kind(text: &str) -> Result<SeriesKind, Failure> {
    if text == "total" {
        return Ok(SeriesKind::Total);
    }
    text.strip_prefix("blocks:")
        .and_then(|l| l.parse().ok())
        .map(SeriesKind::Blocks)
        .ok_or_else(|| Failure::usage(format!("unknown series kind `{text}`; expected `total` or `blocks:L`")))
}

fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    match BigRational::from_str(text.trim()) {
        Ok(q) => Ok(q),
        Err(_) => Err(Failure::usage(format!("`{text}` is not a rational number"))),
    }
}

struct Source {
    series: TruncatedSeries,
    table: Option<CountTable>,
}

fn source(args: &SeriesArgs, config: RunConfig) -> Result<Source, Failure> {
    if let Some(coeffs) = &args.coeffs {
        return Ok(Source { series: TruncatedSeries::parse(coeffs)?, table: None });
    }
    let Some(patterns) = &args.from_pattern else {
        return Err(Failure::usage("give --from-pattern or --coeffs"));
    };
    let t = table(patterns, args.n_max, config)?;
    let series = TruncatedSeries::from_counts(&t, parse_kind(&args.kind)?)?;
    Ok(Source { series, table: Some(t) })
}

fn emit_series(s: &TruncatedSeries, format: Format) -> Emission {
    Emission::ok(match format {
        Format::Text => format!("{s}\n"),
        Format::Json => to_json(s),
        Format::Csv => {
            let mut w = String::from("n,numerator,denominator\n");
            for (n, c) in s.coefficients().iter().enumerate() {
                w.push_str(&format!("{n},{},{}\n", c.numer(), c.denom()));
            }
            w
        }
    })
}

pub fn series(args: &SeriesArgs, config: RunConfig) -> Outcome {
    if let SeriesOp::Supercritical { num: Some(num), den: Some(den), .. } = &args.op {
        let g = RationalFunction::new(Polynomial::parse(num)?, Polynomial::parse(den)?)?;
        return emit_verdict(&series::rational_supercritical(&g)?, config.format);
    }
    let src = source(args, config)?;
    let g = &src.series;
    match &args.op {
        SeriesOp::Show => Ok(emit_series(g, config.format)),
        SeriesOp::QuasiInverse => Ok(emit_series(&g.quasi_inverse()?, config.format)),
        SeriesOp::IndecomposablePart => Ok(emit_series(&g.indecomposable_part()?, config.format)),
        SeriesOp::Power { exp } => Ok(emit_series(&g.power(*exp), config.format)),
        SeriesOp::Eval { z0 } => {
            let z0 = parse_rational(z0)?;
            let value = g.eval_partial(&z0);
            Ok(Emission::ok(match config.format {
                Format::Csv => return Err(no_csv("series eval")),
                Format::Json => to_json(&json!({
                    "order": g.order(),
                    "z0": skewperm::io::RationalPair::from(&z0),
                    "value": skewperm::io::RationalPair::from(&value),
                })),
                Format::Text => format!("partial sum to order {} at {z0} = {value}\n", g.order()),
            }))
        }
        SeriesOp::Dominates { other_coeffs, other_kind } => {
            let other = match (other_coeffs, other_kind) {
                (Some(c), _) => TruncatedSeries::parse(c)?,
                (None, Some(kind)) => {
                    let t = src.table.as_ref().ok_or_else(|| Failure::usage("--other-kind needs --from-pattern"))?;
                    TruncatedSeries::from_counts(t, parse_kind(kind)?)?
                }
                (None, None) => return Err(Failure::usage("give --other-coeffs or --other-kind")),
            };
            let d = g.dominates(&other)?;
            let holds = d == Dominance::Holds;
            let body = match config.format {
                Format::Csv => return Err(no_csv("series dominates")),
                Format::Json => to_json(&json!({ "dominance": d })),
                Format::Text => match d {
                    Dominance::Holds => "dominance holds\n".to_string(),
                    Dominance::ViolatedAt(n) => format!("dominance fails at n = {n}\n"),
                },
            };
            Ok(Emission::verdict(body, holds))
        }
        SeriesOp::Supercritical { z0, .. } => {
            let z0 = z0.as_deref().ok_or_else(|| Failure::usage("give --num and --den, or a series with --z0"))?;
            emit_verdict(&series::probe_truncated(g, &parse_rational(z0)?)?, config.format)
        }
    }
}

fn emit_verdict(v: &SupercriticalVerdict, format: Format) -> Outcome {
    let body = match format {
        Format::Csv => return Err(no_csv("series supercritical")),
        Format::Json => to_json(v),
        Format::Text => {
            let status = serde_json::to_value(v.status).expect("status serializes");
            let mut s = format!("status: {}\nevidence: {}\n", status.as_str().unwrap_or_default(), v.evidence);
            if let Some(p) = &v.pole {
                if p.is_exact() {
                    s.push_str(&format!("pole: {}\n", p.lower));
                } else {
                    s.push_str(&format!("pole: in ({}, {}]\n", p.lower, p.upper));
                }
            }
            if let Some(w) = &v.witness {
                s.push_str(&format!("witness: G({}) = {}\n", w.z0, w.value));
            }
            s
        }
    };
    Ok(Emission::ok(body))
}

pub fn classify(args: &ClassifyArgs, config: RunConfig) -> Outcome {
    let opts = ClassifyOptions { ceiling: config.ceiling, ..ClassifyOptions::default() };
    if let Some(k) = args.all_of_length {
        let c = classify::wilf_classes_with(k, args.depth, &opts)?;
        return Ok(Emission::ok(match config.format {
            Format::Csv => c.to_csv(),
            Format::Json => to_json(&c),
            Format::Text => c.to_text(),
        }));
    }
    let q = Permutation::parse(args.pattern.as_deref().expect("clap requires a target"))?;
    let r = classify::theorem_applicability_with(&q, args.depth, &opts)?;
    Ok(Emission::ok(match config.format {
        Format::Json => to_json(&r),
        Format::Text => format!("{r}\n"),
        Format::Csv => {
            let (kind, witness, evidence) = match &r.condition {
                Condition::FirstEntryNot1 => ("first_entry_not_1", String::new(), String::new()),
                Condition::LastEntryNotK => ("last_entry_not_k", String::new(), String::new()),
                Condition::WilfEquivalentToCovered { witness, evidence } => {
                    ("wilf_equivalent_to_covered", witness.to_string(), evidence.to_string())
                }
                Condition::NotCovered => ("not_covered", String::new(), String::new()),
            };
            format!(
                "pattern,skew_indecomposable_form,condition,witness,evidence,observation\n{},{},{kind},{witness},{evidence},{}\n",
                r.pattern,
                r.skew_indecomposable_form,
                r.observation.as_deref().unwrap_or_default()
            )
        }
    }))
}
