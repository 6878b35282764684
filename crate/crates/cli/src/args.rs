use std::path::PathBuf;

use blm_core::heuristics::QuadrantSplit;
use blm_core::{ReductionKind, TourMethod};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "blm", version, about = "Border length minimization for probe arrays")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance or a reduction gadget instance.
    Generate(GenerateArgs),
    /// Place the probes of an instance with one algorithm.
    Solve(SolveArgs),
    /// Improve an existing placement with HRA or RHRA.
    Refine(RefineArgs),
    /// Run every size x algorithm x seed combination and write a CSV table.
    Bench(BenchArgs),
    /// Print the lower bound and, on request, the exact optimum.
    Bound(BoundArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Grid side of a random instance.
    #[arg(long, conflicts_with = "reduction", required_unless_present = "reduction")]
    pub side: Option<usize>,
    /// Build a reduction instance instead.
    #[arg(long, value_parser = parse_kind)]
    pub reduction: Option<ReductionKind>,
    /// Number of source strings of the reduction (or `n` of the alternate special instance).
    #[arg(long, requires = "reduction")]
    pub n: Option<usize>,
    /// Read the reduction's source strings from this instance file.
    #[arg(long, requires = "reduction", conflicts_with = "n")]
    pub source: Option<PathBuf>,
    /// Probe length (source string length for reductions).
    #[arg(long, default_value_t = 25)]
    pub length: usize,
    /// Probe alphabet; reductions always use 01.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TuningArgs {
    #[arg(long, default_value_t = 6)]
    pub swm_window: usize,
    #[arg(long, default_value_t = 3)]
    pub swm_step: usize,
    /// Look-ahead rows of REPX.
    #[arg(long, default_value_t = 3)]
    pub lookahead: usize,
    /// Let QEPX also rotate the quadrant blocks.
    #[arg(long)]
    pub orientations: bool,
    /// How QEPX deals probes to quadrants: `sorted` or `input`.
    #[arg(long, value_parser = parse_split, default_value = "sorted")]
    pub quadrant_split: QuadrantSplit,
    /// Tour used by the `tsp` algorithm.
    #[arg(long, value_parser = parse_tour, default_value = "mst_double")]
    pub tour: TourMethod,
    /// Refinement degree for `+hra` / `+rhra` steps.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// RHRA iterations for `+rhra` steps.
    #[arg(long, default_value_t = 350)]
    pub iterations: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Append the report row to this CSV file (the header is written once).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Name of the test case in the report.
    #[arg(long)]
    pub test_case: Option<String>,
    /// Write `-` instead of the wall time, for reproducible reports.
    #[arg(long)]
    pub omit_time: bool,
    /// Skip the lower bound (written as `-`).
    #[arg(long)]
    pub no_lower_bound: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// rand, sort, swm, repx, epx, qepx or tsp, optionally followed by +hra and/or +rhra.
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Placement output file, `-` for stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub tuning: TuningArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RefineMode {
    Hra,
    Rhra,
    /// HRA followed by RHRA.
    #[value(name = "hra+rhra")]
    Both,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub placement: PathBuf,
    #[arg(long, value_enum, default_value = "rhra")]
    pub mode: RefineMode,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 350)]
    pub iterations: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Probe counts (perfect squares), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Algorithms, comma separated (e.g. `epx,qepx,rand+hra+rhra`).
    #[arg(long, value_delimiter = ',', required = true)]
    pub algos: Vec<String>,
    /// Seeds, comma separated; `a..b` expands to a half-open range.
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<String>,
    #[arg(long, default_value_t = 25)]
    pub length: usize,
    #[arg(long, default_value = "ACGT")]
    pub alphabet: String,
    /// CSV output file, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long)]
    pub omit_time: bool,
    /// Largest probe count for which the lower bound is computed.
    #[arg(long, default_value_t = 16384)]
    pub lower_bound_max: usize,
    #[command(flatten)]
    pub tuning: TuningArgs,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Also compute the exact optimum by exhaustive search.
    #[arg(long)]
    pub exact: bool,
    /// Search budget; defaults to $BLM_BRUTE_FORCE_BUDGET or 5000000.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the optimal placement (or tour) here.
    #[arg(long, requires = "exact")]
    pub out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<ReductionKind, String> {
    s.parse().map_err(|e: blm_core::Error| e.to_string())
}

fn parse_tour(s: &str) -> Result<TourMethod, String> {
    s.parse().map_err(|e: blm_core::Error| e.to_string())
}

fn parse_split(s: &str) -> Result<QuadrantSplit, String> {
    s.parse().map_err(|e: blm_core::Error| e.to_string())
}
