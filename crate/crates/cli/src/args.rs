//! Command-line grammar.

use std::path::PathBuf;

use ci_core::{BoundsMode, StrategyKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ci-opt",
    version,
    about = "Constrained Cohort Intelligence: runs, oracle searches and table reproduction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run seeded batches of one problem with one constraint strategy.
    Run(RunArgs),
    /// Brute-force reference search of one problem.
    Oracle(OracleArgs),
    /// Re-run the experiments behind a published table and compare.
    Reproduce(ReproduceArgs),
    /// List problems and strategies.
    List,
}

/// Every value is optional so that a config file can supply it; defaults
/// apply only when neither the command line nor the file sets a key.
#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Problem name (see `list`).
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Cohort size [default: 5].
    #[arg(long)]
    pub candidates: Option<usize>,
    /// Vectors each candidate samples per attempt [default: 10].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Interval reduction factor per attempt [default: 0.99].
    #[arg(long)]
    pub reduction: Option<f64>,
    /// Runs per batch [default: 30].
    #[arg(long)]
    pub runs: Option<usize>,
    /// Seed of the first run; run i uses seed + i [default: 42].
    #[arg(long)]
    pub seed: Option<u64>,
    /// [default: as-written]
    #[arg(long, value_enum)]
    pub bounds_mode: Option<BoundsModeArg>,
    /// [default: 5000]
    #[arg(long)]
    pub max_attempts: Option<usize>,
    /// Lower strategy bound [default: per problem].
    #[arg(long, allow_negative_numbers = true)]
    pub k1: Option<f64>,
    /// Upper strategy bound [default: per problem].
    #[arg(long, allow_negative_numbers = true)]
    pub k2: Option<f64>,
    /// Directory for results.csv, summary.csv and per-run traces.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with any of the above plus strategy constants.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long, default_value_t = ci_core::harness::DEFAULT_ORACLE_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = ci_core::harness::DEFAULT_BASE_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BoundsModeArg::AsWritten)]
    pub bounds_mode: BoundsModeArg,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(6..=15))]
    pub table: u32,
    /// Output directory [default: out/table<N>].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Triangular,
    Modulus,
    Tanh,
}

impl From<StrategyArg> for StrategyKind {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Triangular => StrategyKind::Triangular,
            StrategyArg::Modulus => StrategyKind::Modulus,
            StrategyArg::Tanh => StrategyKind::Tanh,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsModeArg {
    #[serde(alias = "as_written")]
    AsWritten,
    #[serde(alias = "paper_calibrated")]
    PaperCalibrated,
}

impl From<BoundsModeArg> for BoundsMode {
    fn from(m: BoundsModeArg) -> Self {
        match m {
            BoundsModeArg::AsWritten => BoundsMode::AsWritten,
            BoundsModeArg::PaperCalibrated => BoundsMode::PaperCalibrated,
        }
    }
}
