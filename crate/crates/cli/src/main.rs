//! `skewperm`: count, verify, transform and classify from the command line.
//!
//! Exit codes: 0 success or claim verified, 1 claim falsified, 2 usage or
//! precondition error, 3 refusal by the length ceiling.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewperm::enumerate::DEFAULT_CEILING;

#[derive(Parser, Debug)]
#[command(name = "skewperm", version, about = "Pattern-avoiding permutations stratified by skew blocks")]
struct Cli {
    /// Largest permutation length any enumeration may reach.
    #[arg(long, global = true, env = "SKEWPERM_CEILING", default_value_t = DEFAULT_CEILING)]
    ceiling: usize,
    /// Worker threads: a positive integer or `auto`.
    #[arg(long, global = true, env = "SKEWPERM_THREADS", default_value = "auto", value_parser = parse_threads)]
    threads: Threads,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug)]
enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> Result<Threads, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Threads::Fixed(n)),
        _ => Err(format!("`{s}` is neither `auto` nor a positive integer")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count avoiders of a pattern set by length, optionally by skew blocks.
    Count(CountArgs),
    /// Run an exhaustive check of a map or monotonicity claim.
    Verify(VerifyArgs),
    /// Exact operations on truncated counting series.
    Series(SeriesArgs),
    /// Which patterns have provably monotone block counts; empirical Wilf classes.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Patterns, e.g. `132` or `123,132`; use `;` between patterns written with commas.
    #[arg(long)]
    pub patterns: String,
    #[arg(long)]
    pub n_max: usize,
    /// Include the counts for each number of skew blocks.
    #[arg(long)]
    pub by_blocks: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Moving the maximum to the end matches two-block and one-block 132-avoiders.
    #[value(name = "132")]
    Max132,
    /// Moving the rightmost big entry injects two-block into one-block avoiders of a good pattern.
    Good,
    /// Block counts never increase with the number of blocks.
    Mongen,
    /// The set {123,132} does violate monotonicity; success means violations were found.
    Counterexample,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub lemma: Lemma,
    /// Pattern for `good` and `mongen`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Pattern set for `counterexample`.
    #[arg(long, default_value = "123,132")]
    pub patterns: String,
    #[arg(long)]
    pub n_max: usize,
    /// Run `good` even on patterns outside its hypotheses; the report is labelled.
    #[arg(long)]
    pub diagnostic: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// Read the series off the counts of this pattern set.
    #[arg(long, conflicts_with = "coeffs")]
    pub from_pattern: Option<String>,
    /// Coefficients `c_0,...,c_N` (integers or fractions).
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Truncation order when reading from a pattern.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// `total` or `blocks:L`.
    #[arg(long, default_value = "total")]
    pub kind: String,
    #[command(subcommand)]
    pub op: SeriesOp,
}

#[derive(Subcommand, Debug)]
pub enum SeriesOp {
    /// Print the series itself.
    Show,
    /// `1/(1 - G) - 1`.
    QuasiInverse,
    /// `1 - 1/F`.
    IndecomposablePart,
    /// `G^L`.
    Power {
        #[arg(long)]
        exp: u32,
    },
    /// Partial sum at a rational point.
    Eval {
        #[arg(long)]
        z0: String,
    },
    /// Whether the series dominates another coefficientwise.
    Dominates {
        /// Coefficients of the other series.
        #[arg(long, conflicts_with = "other_kind")]
        other_coeffs: Option<String>,
        /// Another kind read from the same pattern counts.
        #[arg(long)]
        other_kind: Option<String>,
    },
    /// Whether `1/(1 - G)` is supercritical.
    Supercritical {
        /// Numerator coefficients of a rational `G`.
        #[arg(long, requires = "den")]
        num: Option<String>,
        /// Denominator coefficients of a rational `G`.
        #[arg(long, requires = "num")]
        den: Option<String>,
        /// Probe point for a truncated series.
        #[arg(long, conflicts_with = "num")]
        z0: Option<String>,
    },
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["pattern", "all_of_length"]))]
pub struct ClassifyArgs {
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long)]
    pub all_of_length: Option<usize>,
    /// Largest length compared for empirical Wilf equivalence.
    #[arg(long, default_value_t = skewperm::classify::DEFAULT_DEPTH)]
    pub depth: usize,
}

/// Settings every command sees.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub ceiling: usize,
    pub format: Format,
}

/// What a command produced and how the process should exit.
pub struct Emission {
    pub body: String,
    pub code: u8,
}

impl Emission {
    pub fn ok(body: String) -> Self {
        Self { body, code: 0 }
    }

    pub fn verdict(body: String, passed: bool) -> Self {
        Self { body, code: if passed { 0 } else { 1 } }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }
}

impl From<skewperm::Error> for Failure {
    fn from(e: skewperm::Error) -> Self {
        let code = if matches!(e, skewperm::Error::CeilingExceeded { .. }) { 3 } else { 2 };
        Self { message: e.to_string(), code }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match cli.threads {
        Threads::Auto => 0,
        Threads::Fixed(n) => n,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return fail(&Failure::usage(format!("cannot start worker threads: {e}"))),
    };
    let config = RunConfig { ceiling: cli.ceiling, format: cli.format };
    let result = pool.install(|| match &cli.command {
        Command::Count(args) => commands::count(args, config),
        Command::Verify(args) => commands::verify(args, config),
        Command::Series(args) => commands::series(args, config),
        Command::Classify(args) => commands::classify(args, config),
    });
    match result {
        Ok(emission) => match write_body(&emission.body, cli.output.as_ref()) {
            Ok(()) => ExitCode::from(emission.code),
            Err(e) => fail(&Failure::usage(e)),
        },
        Err(failure) => fail(&failure),
    }
}

fn write_body(body: &str, path: Option<&PathBuf>) -> Result<(), String> {
    match path {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    }
}

fn fail(failure: &Failure) -> ExitCode {
    eprintln!("error: {}", failure.message);
    ExitCode::from(failure.code)
}
