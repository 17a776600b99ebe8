use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use menurev::revenue::DEFAULT_BUDGET;
use menurev::Rational;

#[derive(Debug, Parser)]
#[command(name = "menurev", version, about = "Exact revenue computations for multi-item pricing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a distribution and its canonical menu.
    Construct(ConstructArgs),
    /// Compute revenue quantities for a distribution file.
    Revenue(RevenueArgs),
    /// Compute the T(b) bound of a menu.
    Tbound(TboundArgs),
    /// Discretize a menu.
    Discretize(DiscretizeArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Recompute the worked numbers of the catalog in one table.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (a directory for `construct`); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn rational(text: &str) -> Result<Rational, String> {
    menurev::rational::parse(text).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// hypercube, shell, tbound-shell, or worked
    pub name: String,
    /// Catalog entry for `worked` (symmetric, fm, product, line, t-example-1, ...).
    pub example: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Number of leading points used by the gap construction.
    #[arg(long)]
    pub prefix: Option<usize>,
    /// Parameter M of the worked families.
    #[arg(long)]
    pub m: Option<u64>,
    /// Size of the line grid.
    #[arg(long)]
    pub n: Option<u64>,
    /// Denominator of the shell coordinates.
    #[arg(long, default_value_t = 1_000_000_000_000)]
    pub precision: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RevenueArgs {
    /// Distribution JSON file.
    pub input: PathBuf,
    /// Comma-separated list such as `BREV,SREV,MREV(1..5)`; every quantity when omitted.
    #[arg(long)]
    pub quantities: Option<String>,
    /// Also compute MREV(1..=m).
    #[arg(long)]
    pub m: Option<usize>,
    /// Search budget (LP solves for branch and bound, leaves for exhaustive search).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Use exhaustive enumeration instead of branch and bound.
    #[arg(long)]
    pub exhaustive: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TboundArgs {
    /// Menu JSON file.
    #[arg(required_unless_present = "example")]
    pub input: Option<PathBuf>,
    /// Use a catalog menu instead of a file.
    #[arg(long, conflicts_with = "input")]
    pub example: Option<String>,
    /// Parameter M for catalog menus that take one.
    #[arg(long)]
    pub m: Option<u64>,
    /// Also build the tight distribution and check R = T·BRev on it.
    #[arg(long)]
    pub tight: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    /// Menu JSON file.
    pub input: PathBuf,
    /// Upper end of the price range (two-item mode).
    #[arg(long = "H", value_parser = rational)]
    pub h: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub delta: Option<Rational>,
    /// Grid size; selects grid rounding.
    #[arg(long, conflicts_with_all = ["h", "delta"])]
    pub n: Option<u64>,
    /// Distribution JSON used to certify the result.
    #[arg(long)]
    pub dist: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 50)]
    pub prefix: usize,
    /// Point sequence for the growth suite.
    #[arg(long, default_value = "shell")]
    pub construction: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Shell prefix for the growth rows.
    #[arg(long, default_value_t = 50)]
    pub prefix: usize,
    /// Parameter M of the tight families.
    #[arg(long, default_value_t = 100)]
    pub m: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}
