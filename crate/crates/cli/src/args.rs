use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sigred::FastPathMode;

#[derive(Parser, Debug)]
#[command(name = "sigred", version, about = "Complete reductions and telescoping in difference field towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sigma-pair (g, r) with f = Delta(g) + r
    Reduce(SingleArgs),
    /// Decide whether f = Delta(g) has a solution in the tower
    Telescope(SingleArgs),
    /// Basis of all constant vectors c with sum c_i f_i summable
    ParamTelescope(MultiArgs),
    /// Test whether a new generator with the given difference is a sigma-monomial
    SigmaCheck(SigmaCheckArgs),
    /// Rebuild the tower so that every difference is its own remainder
    WellGenerate(TowerArgs),
    /// Reduce f in the well generated tower and compare nesting depths
    DepthReduce(SingleArgs),
    /// Reduce f and check the pair numerically on a range of indices
    Verify(VerifyArgs),
    /// Time the reduction of Delta(p) for random p in the benchmark tower
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TowerArgs {
    /// Tower description file (TOML)
    #[arg(long, value_name = "FILE")]
    pub tower: PathBuf,

    /// Half-width of the shift-equivalence search window
    #[arg(long, value_name = "N")]
    pub se_window: Option<usize>,

    /// Polynomial fast path: auto, on or off
    #[arg(long, value_name = "MODE")]
    pub fast_path: Option<FastPathMode>,

    /// Extra representative for a generator, as NAME=POLY (repeatable)
    #[arg(long = "seed-reps", value_name = "NAME=POLY")]
    pub seed_reps: Vec<String>,

    /// Print a JSON result document
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SingleArgs {
    #[command(flatten)]
    pub tower: TowerArgs,

    /// Input expression
    #[arg(long, value_name = "EXPR")]
    pub expr: String,

    /// Exit with status 1 when the input is not summable
    #[arg(long)]
    pub require_summable: bool,

    /// Also check the pair numerically on A..B (inclusive)
    #[arg(long, value_name = "A..B")]
    pub verify_range: Option<IndexRange>,

    /// Start index of the sequence model
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub start: i64,

    /// Value of a constant for numeric checks, as NAME=VALUE (repeatable)
    #[arg(long, value_name = "NAME=VALUE")]
    pub param: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MultiArgs {
    #[command(flatten)]
    pub tower: TowerArgs,

    /// Input expression (repeatable, in order)
    #[arg(long, value_name = "EXPR", required = true)]
    pub expr: Vec<String>,

    /// Exit with status 1 when only the trivial row exists
    #[arg(long)]
    pub require_summable: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SigmaCheckArgs {
    #[command(flatten)]
    pub tower: TowerArgs,

    /// Prospective difference of the new generator
    #[arg(long, value_name = "EXPR")]
    pub expr: String,

    /// Level over which the generator would be adjoined (default: the top)
    #[arg(long)]
    pub level: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub tower: TowerArgs,

    #[arg(long, value_name = "EXPR")]
    pub expr: String,

    /// Index range, inclusive
    #[arg(long, value_name = "A..B", default_value = "1..50")]
    pub verify_range: IndexRange,

    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub start: i64,

    #[arg(long, value_name = "NAME=VALUE")]
    pub param: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Comma separated total degrees
    #[arg(long, value_delimiter = ',', default_value = "5,10,15")]
    pub degrees: Vec<usize>,

    #[arg(long, default_value_t = 3)]
    pub trials: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, value_name = "N")]
    pub se_window: Option<usize>,

    #[arg(long, value_name = "MODE")]
    pub fast_path: Option<FastPathMode>,

    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub from: i64,
    pub to: i64,
}

impl std::str::FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<IndexRange, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
        let from = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
        let to = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
        if from > to {
            return Err(format!("empty range `{s}`"));
        }
        Ok(IndexRange { from, to })
    }
}
