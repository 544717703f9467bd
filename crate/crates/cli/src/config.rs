//! Optional TOML config file for `run`, merged under the command line.

use std::path::{Path, PathBuf};

use ci_core::harness::{ExperimentPlan, StrategyOverrides};
use ci_core::{BoundsMode, CohortConfig};
use serde::Deserialize;

use crate::args::{BoundsModeArg, RunArgs, StrategyArg};
use crate::error::CliError;

/// Flat keys mirroring the `run` flags plus strategy and stopping constants.
#[derive(Debug, Default, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub problem: Option<String>,
    pub strategy: Option<StrategyArg>,
    pub candidates: Option<usize>,
    pub trials: Option<usize>,
    pub reduction: Option<f64>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub bounds_mode: Option<BoundsModeArg>,
    pub max_attempts: Option<usize>,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub out: Option<PathBuf>,
    pub delta: Option<f64>,
    pub phi: Option<f64>,
    pub a_mod: Option<f64>,
    pub outside_prob: Option<f64>,
    pub width_threshold: Option<f64>,
    pub stagnation_window: Option<usize>,
    pub stagnation_tol: Option<f64>,
}

pub fn load_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text).map_err(|(line, message)| CliError::ConfigParse {
        path: path.to_path_buf(),
        line,
        message,
    })
}

/// Parses config text; errors carry the 1-based line of the offending token.
pub fn parse_config(text: &str) -> Result<FileConfig, (usize, String)> {
    toml::from_str(text).map_err(|e: toml::de::Error| {
        let line = e.span().map_or(1, |span| {
            text[..span.start.min(text.len())].matches('\n').count() + 1
        });
        (line, e.message().to_string())
    })
}

/// Resolved `run` settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub plan: ExperimentPlan,
    pub out: Option<PathBuf>,
}

/// Merges command line over file over built-in defaults.
pub fn resolve(args: &RunArgs, file: &FileConfig) -> Result<RunSettings, CliError> {
    let problem = args
        .problem
        .clone()
        .or_else(|| file.problem.clone())
        .ok_or_else(|| CliError::Usage("run: --problem is required".into()))?;
    let strategy = args
        .strategy
        .or(file.strategy)
        .ok_or_else(|| CliError::Usage("run: --strategy is required".into()))?;
    let defaults = CohortConfig::default();
    let config = CohortConfig {
        candidates: args
            .candidates
            .or(file.candidates)
            .unwrap_or(defaults.candidates),
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        reduction: args
            .reduction
            .or(file.reduction)
            .unwrap_or(defaults.reduction),
        max_attempts: args
            .max_attempts
            .or(file.max_attempts)
            .unwrap_or(defaults.max_attempts),
        width_threshold: file.width_threshold.unwrap_or(defaults.width_threshold),
        stagnation_window: file.stagnation_window.unwrap_or(defaults.stagnation_window),
        stagnation_tol: file.stagnation_tol.unwrap_or(defaults.stagnation_tol),
    };
    let mut plan = ExperimentPlan::new(problem, strategy.into())
        .with_bounds_mode(
            args.bounds_mode
                .or(file.bounds_mode)
                .map_or(BoundsMode::AsWritten, Into::into),
        )
        .with_runs(
            args.runs
                .or(file.runs)
                .unwrap_or(ci_core::harness::DEFAULT_RUNS),
        )
        .with_base_seed(
            args.seed
                .or(file.seed)
                .unwrap_or(ci_core::harness::DEFAULT_BASE_SEED),
        );
    plan.config = config;
    plan.overrides = StrategyOverrides {
        k1: args.k1.or(file.k1),
        k2: args.k2.or(file.k2),
        delta: file.delta,
        phi: file.phi,
        a_mod: file.a_mod,
        outside_prob: file.outside_prob,
    };
    plan.validate()?;
    Ok(RunSettings {
        plan,
        out: args.out.clone().or_else(|| file.out.clone()),
    })
}
