use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "stratalloc",
    version,
    about = "Optimum sample allocation for stratified sampling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one or more allocation problems and print (or write) a report.
    Solve(SolveArgs),
    /// Check whether an allocation is optimal for a problem.
    Verify(VerifyArgs),
    /// Solve by brute force, optionally comparing with the recursive solver.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Minimum cost at a fixed variance V, with upper bounds M.
    Mincost,
    /// Minimum variance at a fixed budget Vt, with lower bounds m.
    Lower,
    /// Neyman allocation of a total sample size n.
    Classical,
    /// Neyman allocation of n with upper bounds M.
    Upper,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Mincost => "mincost",
            Kind::Lower => "lower",
            Kind::Classical => "classical",
            Kind::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Round {
    #[default]
    None,
    Ceil,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Enumerate every take-set.
    #[default]
    Subsets,
    /// Scan the budget plane directly (two or three strata).
    Grid,
}

/// Problem kind and scalar parameters. Scalars given here override the ones
/// read from a JSON input.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Target variance (mincost).
    #[arg(long = "v", allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Variance offset (mincost).
    #[arg(long = "a0", allow_negative_numbers = true)]
    pub a0: Option<f64>,
    /// Fixed overhead cost, reported only (mincost).
    #[arg(long = "c0", allow_negative_numbers = true)]
    pub c0: Option<f64>,
    /// Budget (lower).
    #[arg(long = "vt", allow_negative_numbers = true)]
    pub vt: Option<f64>,
    /// Total sample size (classical, upper).
    #[arg(long = "n", allow_negative_numbers = true)]
    pub n: Option<f64>,
    /// Derive A = N·S (and A0 = Σ N·S²) from the N and S columns.
    #[arg(long)]
    pub from_srswor: bool,
    /// Relative tolerance for bound comparisons.
    #[arg(long, env = "STRATALLOC_TOL", allow_negative_numbers = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Strata table (CSV or JSON). Repeat for batch mode.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub round: Round,
    /// Include per-pass diagnostics.
    #[arg(long)]
    pub trace: bool,
    /// Include the Lagrange multipliers.
    #[arg(long)]
    pub duals: bool,
    /// Worker threads for batch mode.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write one `<input stem>.json` report per input here instead of to
    /// standard output. Required with more than one input.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub input: PathBuf,
    /// Allocation to check: CSV with `stratum,value` columns, or a solve report.
    #[arg(long)]
    pub allocation: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    /// Grid points per scan for `--method grid`.
    #[arg(long, default_value_t = 1_000_000)]
    pub resolution: usize,
    /// Also run the recursive solver and report the largest relative deviation.
    #[arg(long)]
    pub compare: bool,
}
