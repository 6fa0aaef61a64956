//! Command-line front end: instance registry, commands, acceptance reproduction,
//! precision retry and report rendering.

mod commands;
mod output;
pub mod registry;
pub mod reproduce;
mod sources;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::Error;

pub use output::render;
pub use sources::{read_source, Source};

/// JSON schema for every report printed with `--format json`.
pub const SCHEMA: &str = include_str!("../../schema/laurel-report.schema.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNKNOWN_ID: i32 = 2;
pub const EXIT_PRECISION_CAP: i32 = 3;
pub const EXIT_REFUTED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "laurel", version, about = "Continued fractions over F_p((1/X)) and Littlewood-product checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads; LAUREL_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// First precision tried, in coefficients.
    #[arg(long, default_value_t = 1 << 8, global = true)]
    pub prec_start: i64,
    /// Largest precision tried before giving up with exit code 3.
    #[arg(long, default_value_t = 1 << 14, global = true)]
    pub prec_cap: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial quotients of an instance or of a series, word or rational file.
    Expand {
        /// Instance id or path to a JSON file.
        source: String,
        /// Partial quotients wanted, a_0 included.
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Minimize the Littlewood products over monic q of degree ≤ D.
    Scan {
        /// Θ: instance id, `<id>^-1`, or path to a JSON file.
        #[arg(long, required_unless_present = "pair")]
        theta: Option<String>,
        /// Φ, in the same forms as Θ.
        #[arg(long, required_unless_present = "pair")]
        phi: Option<String>,
        /// `random`: a pair of random series, compared against the brute-force oracle.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long = "D", alias = "degree", default_value_t = 5)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Precision of random series.
        #[arg(long, default_value_t = 24)]
        random_precision: i64,
    },
    /// Build Φ from a badly approximable Θ and a gauge, and check the strengthened inequality.
    Construct {
        #[arg(long, default_value = "baum-sweet")]
        theta: String,
        /// reciprocal | reciprocal-log | geometric | table:v1,v2,…
        #[arg(long, default_value = "reciprocal")]
        phi_gauge: String,
        #[arg(long, default_value_t = 4)]
        stages: usize,
        /// One bit per stage: 0 picks X^{M+1}, 1 picks X^{M+2}.
        #[arg(long)]
        t_bits: Option<String>,
        #[arg(long, default_value_t = 3)]
        relation_degree: usize,
        #[arg(long, default_value_t = 200)]
        relation_precision: i64,
    },
    /// Finite-window certificate for an instance's palindrome or periodic-block condition.
    Certify {
        /// mills-robbins | lasjaunias(k) | theta-p(p) | buck-robbins
        instance: String,
        #[arg(long, value_enum, default_value_t = Condition::Palindromic)]
        condition: Condition,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
    /// Run one acceptance criterion (1–12), or `all`.
    Reproduce { id: String },
    /// Print the JSON schema of the reports.
    Schema,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    Palindromic,
    Periodic,
}

/// Precision policy shared by all commands.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub prec_start: i64,
    pub prec_cap: i64,
}

impl RunConfig {
    /// prec_start, 2·prec_start, … up to prec_cap.
    pub fn precisions(self) -> impl Iterator<Item = i64> {
        std::iter::successors(Some(self.prec_start), move |&p| (p < self.prec_cap).then(|| (2 * p).min(self.prec_cap)))
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { prec_start: 1 << 8, prec_cap: 1 << 14 }
    }
}

/// A report and the exit code it carries.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    fn new(command: &str, result: Value, code: i32) -> Outcome {
        let status = match code {
            EXIT_OK => "ok",
            EXIT_PRECISION_CAP => "precision-cap",
            EXIT_REFUTED => "refuted",
            _ => "error",
        };
        Outcome { report: serde_json::json!({ "command": command, "status": status, "result": result }), code }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownId(_) => EXIT_UNKNOWN_ID,
        _ => EXIT_ERROR,
    }
}

/// Run a parsed command in the current thread pool.
pub fn execute(cli: &Cli) -> crate::Result<Outcome> {
    if cli.prec_start < 2 || cli.prec_cap < cli.prec_start {
        return Err(Error::Invalid("need 2 <= prec-start <= prec-cap".into()));
    }
    let cfg = RunConfig { prec_start: cli.prec_start, prec_cap: cli.prec_cap };
    match &cli.command {
        Command::Expand { source, terms } => commands::expand(source, *terms, cfg),
        Command::Scan { theta, phi, pair, p, degree, seed, random_precision } => match pair.as_deref() {
            Some("random") => commands::scan_random(*p, *degree, *seed, *random_precision),
            Some(other) => Err(Error::UnknownId(other.to_string())),
            None => commands::scan(theta.as_deref().unwrap_or_default(), phi.as_deref().unwrap_or_default(), *degree, cfg),
        },
        Command::Construct { theta, phi_gauge, stages, t_bits, relation_degree, relation_precision } => {
            commands::construct(theta, phi_gauge, *stages, t_bits.as_deref(), *relation_degree, *relation_precision, cfg)
        }
        Command::Certify { instance, condition, n_max } => commands::certify(instance, *condition, *n_max),
        Command::Reproduce { id } => reproduce::command(id),
        Command::Schema => {
            let schema: Value = serde_json::from_str(SCHEMA).expect("shipped schema is valid JSON");
            Ok(Outcome { report: schema, code: EXIT_OK })
        }
    }
}

/// Threads requested through LAUREL_THREADS, then `--threads`.
pub fn thread_count(cli: &Cli) -> Option<usize> {
    std::env::var("LAUREL_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0).or(cli.threads)
}

/// Parse, run in a pool of the requested size, and render; returns (stdout, stderr, exit code).
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_parsed(&cli, thread_count(&cli)),
        Err(e) => {
            let text = e.to_string();
            if e.use_stderr() {
                (String::new(), text, EXIT_ERROR)
            } else {
                (text, String::new(), EXIT_OK)
            }
        }
    }
}

/// Run a parsed command in a fresh pool of `threads` workers (rayon's default when `None`).
pub fn run_parsed(cli: &Cli, threads: Option<usize>) -> (String, String, i32) {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return (String::new(), format!("thread pool: {e}\n"), EXIT_ERROR),
    };
    match pool.install(|| execute(cli)) {
        Ok(o) => (render(&o.report, cli.format), String::new(), o.code),
        Err(e) => (String::new(), format!("error: {e}\n"), exit_code(&e)),
    }
}
