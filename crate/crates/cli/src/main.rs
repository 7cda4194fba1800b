//! `zagreb`: compute the general reduced second Zagreb index, build extremal
//! trees, enumerate tree classes, and run the verification harness.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zagreb_core::enumeration::DEFAULT_GUARD;
use zagreb_core::Rational;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "ZAGREB_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "zagreb", version, about = "Exact GRM_λ on trees: families, enumeration, verification")]
pub struct Cli {
    /// Worker threads; 1 runs sequentially. Defaults to all cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// Largest tree order the enumerator accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate GRM_λ on a tree read from an edge-list file.
    Index(IndexArgs),
    /// Build the members of a named family.
    Family(FamilyArgs),
    /// List every tree of a given order, optionally degree-bounded.
    Enumerate(EnumerateArgs),
    /// Solve the degree census system from its free variables.
    Census(CensusArgs),
    /// Reduce a tree of maximum degree at most 3 by the four transformations.
    Normalize(NormalizeArgs),
    /// Check the lower bounds and equality families exhaustively.
    Verify(VerifyArgs),
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    zagreb_core::parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Edge-list file, or `-` for standard input.
    #[arg(long)]
    tree: PathBuf,
    /// λ as an integer or `p/q`; repeatable.
    #[arg(long, required = true, allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Vec<Rational>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKindArg {
    #[value(name = "P")]
    Path,
    #[value(name = "S")]
    Star,
    #[value(name = "SP")]
    Spider,
    #[value(name = "BR")]
    Broom,
    #[value(name = "T1")]
    T1,
    #[value(name = "T2")]
    T2,
    #[value(name = "T3")]
    T3,
    #[value(name = "TT1")]
    TT1,
    #[value(name = "TT2")]
    TT2,
    #[value(name = "TT3")]
    TT3,
    #[value(name = "TT4")]
    TT4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Edgelist,
    Code,
    Census,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: FamilyKindArg,
    /// Order, for P, S, SP and BR.
    #[arg(long)]
    n: Option<usize>,
    /// Maximum degree Δ, for SP and BR.
    #[arg(long)]
    max_deg: Option<usize>,
    /// Second degree Δ′, for BR.
    #[arg(long)]
    second_deg: Option<usize>,
    /// Family index k, for the optimal families.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Emit::Edgelist)]
    emit: Emit,
    /// Output directory; falls back to $ZAGREB_OUT_DIR, then standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Keep trees with maximum degree at most this value.
    #[arg(long, conflicts_with = "exact_deg")]
    max_deg: Option<usize>,
    /// Keep trees with maximum degree exactly this value.
    #[arg(long)]
    exact_deg: Option<usize>,
    #[arg(long, value_enum, default_value_t = Emit::Code)]
    emit: Emit,
    /// Print only the number of trees.
    #[arg(long)]
    count: bool,
    /// Census output format.
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    /// Output file, or a directory (one file per tree) for edge lists.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// System to solve: 3 or 4. Inferred from --tree when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
    max_deg: Option<u8>,
    /// Read the free variables off this tree instead of the flags.
    #[arg(long, conflicts_with_all = ["n", "n3", "m12", "m13", "m22", "m23", "m34", "m44"])]
    tree: Option<PathBuf>,
    #[arg(long, required_unless_present = "tree")]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    n3: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m12: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m13: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m22: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m23: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m34: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m44: Option<i64>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Jsonl,
    Text,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long, value_enum, default_value_t = TraceFormat::Jsonl)]
    format: TraceFormat,
    /// Also write the reduced tree as an edge list here.
    #[arg(long)]
    result: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "2.1")]
    Spider,
    #[value(name = "3.2")]
    DegreeThree,
    #[value(name = "3.3")]
    DegreeThreeCensus,
    #[value(name = "sec4")]
    DegreeFour,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Statement to check; repeatable.
    #[arg(long, value_enum, default_values_t = [TheoremArg::All])]
    theorem: Vec<TheoremArg>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// λ values for the general bound; repeatable.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Vec<Rational>,
    /// Use maximum degree at most Δ instead of exactly Δ (exploratory).
    #[arg(long)]
    at_most: bool,
    /// Record per-cell wall time (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Settings shared by every subcommand.
pub struct Context {
    pub jobs: Option<usize>,
    pub guard: usize,
}

/// How a successful run ended.
pub enum Outcome {
    Done,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let ctx = Context { jobs: cli.jobs.map(|j| j as usize), guard: cli.guard };
    if let Some(jobs) = ctx.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match commands::run(cli.command, &ctx) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
