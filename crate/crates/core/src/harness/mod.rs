//! Multi-run experiments: seeded batches, summary statistics, the
//! brute-force oracle, and reconciliation against published values.

mod oracle;
mod reconcile;
mod reference;
mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run, CohortConfig, RunResult};
use crate::error::{ConfigError, HarnessError, RunError};
use crate::problem::{registry, BoundsMode, ProblemSpec};
use crate::strategy::{StrategyKind, StrategyParams};

pub use oracle::{oracle_search, OracleResult, DEFAULT_ORACLE_BUDGET, MIN_ORACLE_BUDGET};
pub use reconcile::{reconcile, ReconciliationRow, MATCH_TOLERANCE};
pub use reference::{ReferenceRow, ReferenceTable};
pub use stats::{summarize, RunStatistics};

/// Number of runs per (problem, strategy) in the published protocol.
pub const DEFAULT_RUNS: usize = 30;

pub const DEFAULT_BASE_SEED: u64 = 42;

/// Optional replacements for the strategy parameters a problem defaults to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StrategyOverrides {
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub delta: Option<f64>,
    pub phi: Option<f64>,
    pub a_mod: Option<f64>,
    pub outside_prob: Option<f64>,
}

/// One batch of seeded runs of a single (problem, strategy) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub problem: String,
    pub strategy: StrategyKind,
    pub bounds_mode: BoundsMode,
    pub runs: usize,
    pub base_seed: u64,
    pub config: CohortConfig,
    pub overrides: StrategyOverrides,
}

impl ExperimentPlan {
    pub fn new(problem: impl Into<String>, strategy: StrategyKind) -> Self {
        Self {
            problem: problem.into(),
            strategy,
            bounds_mode: BoundsMode::AsWritten,
            runs: DEFAULT_RUNS,
            base_seed: DEFAULT_BASE_SEED,
            config: CohortConfig::default(),
            overrides: StrategyOverrides::default(),
        }
    }

    pub fn with_bounds_mode(mut self, mode: BoundsMode) -> Self {
        self.bounds_mode = mode;
        self
    }

    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    pub fn with_base_seed(mut self, seed: u64) -> Self {
        self.base_seed = seed;
        self
    }

    pub fn problem_spec(&self) -> Result<ProblemSpec, ConfigError> {
        registry::get(&self.problem, self.bounds_mode)
    }

    /// Strategy parameters: the problem's default `(k1, k2)` and the
    /// built-in constants, each replaced by its override when set.
    pub fn strategy_params(&self, problem: &ProblemSpec) -> Result<StrategyParams, ConfigError> {
        let o = &self.overrides;
        let (k1, k2) = match (o.k1, o.k2, problem.default_strategy_bounds) {
            (Some(k1), Some(k2), _) => (k1, k2),
            (k1, k2, Some((d1, d2))) => (k1.unwrap_or(d1), k2.unwrap_or(d2)),
            (None, _, None) => {
                return Err(ConfigError::Parameter {
                    name: "k1",
                    value: f64::NAN,
                    reason: "problem has no default strategy bounds; set k1 and k2",
                })
            }
            (_, None, None) => {
                return Err(ConfigError::Parameter {
                    name: "k2",
                    value: f64::NAN,
                    reason: "problem has no default strategy bounds; set k1 and k2",
                })
            }
        };
        let mut p = StrategyParams::new(self.strategy, k1, k2);
        if let Some(v) = o.delta {
            p.delta = v;
        }
        if let Some(v) = o.phi {
            p.phi = v;
        }
        if let Some(v) = o.a_mod {
            p.a_mod = v;
        }
        if let Some(v) = o.outside_prob {
            p.outside_prob = v;
        }
        p.validate()?;
        Ok(p)
    }

    /// Checks everything a batch needs before any run starts.
    pub fn validate(&self) -> Result<(ProblemSpec, StrategyParams), ConfigError> {
        if self.runs == 0 {
            return Err(ConfigError::Parameter {
                name: "runs",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        self.config.validate()?;
        let problem = self.problem_spec()?;
        let params = self.strategy_params(&problem)?;
        Ok((problem, params))
    }
}

/// Runs `plan.runs` independent runs, run `i` seeded with `base_seed + i`.
///
/// Runs execute on the current rayon pool; the result order follows `i`
/// regardless of scheduling, and a failed run is recorded in its slot
/// without stopping the others.
pub fn run_batch(plan: &ExperimentPlan) -> Result<Vec<Result<RunResult, RunError>>, ConfigError> {
    let (problem, params) = plan.validate()?;
    Ok((0..plan.runs as u64)
        .into_par_iter()
        .map(|i| {
            run(
                &problem,
                &params,
                &plan.config,
                plan.base_seed.wrapping_add(i),
            )
        })
        .collect())
}

/// The (problem, strategy, bounds mode) batches behind a published table.
pub fn table_batches(
    table: u32,
) -> Result<Vec<(&'static str, StrategyKind, BoundsMode)>, HarnessError> {
    use StrategyKind::*;
    let all = |problem| {
        StrategyKind::ALL
            .iter()
            .map(move |&s| (problem, s, BoundsMode::AsWritten))
    };
    let per_strategy = |s| {
        registry::AMP_NAMES
            .iter()
            .map(move |&p| (p, s, BoundsMode::AsWritten))
            .collect()
    };
    Ok(match table {
        6 => ["g1", "g4", "g6"]
            .map(|p| (p, Tanh, BoundsMode::AsWritten))
            .to_vec(),
        7 => ["g1", "g4", "g6"]
            .map(|p| (p, Modulus, BoundsMode::AsWritten))
            .to_vec(),
        8 => per_strategy(Triangular),
        9 => per_strategy(Modulus),
        10 => per_strategy(Tanh),
        11 => all("ajmb").collect(),
        12 => all("ajmd")
            .chain(
                StrategyKind::ALL
                    .iter()
                    .map(|&s| ("ajmd", s, BoundsMode::PaperCalibrated)),
            )
            .collect(),
        13 => all("wjm").collect(),
        14 => all("usm").collect(),
        15 => all("grinding").collect(),
        other => return Err(HarnessError::UnknownTable(other)),
    })
}
