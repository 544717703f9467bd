use serde::{Deserialize, Serialize};

use super::{OracleResult, ReferenceRow, RunStatistics};
use crate::problem::{BoundsMode, Sense};
use crate::strategy::StrategyKind;

/// Relative difference within which two values are said to match.
pub const MATCH_TOLERANCE: f64 = 0.01;

/// Artifact, oracle and published value for one (problem, strategy) batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconciliationRow {
    pub problem: String,
    pub strategy: StrategyKind,
    pub bounds_mode: BoundsMode,
    pub stats: RunStatistics,
    /// Oracle best; `None` when the oracle found nothing feasible or was
    /// not run.
    pub oracle_best: Option<f64>,
    /// `None` when the oracle was not run.
    pub oracle_min_violation: Option<f64>,
    pub paper_value: Option<f64>,
    pub paper_table: Option<u32>,
    /// `(artifact - oracle) / |oracle|`.
    pub delta_oracle: Option<f64>,
    /// `(artifact - paper) / |paper|`.
    pub delta_paper: Option<f64>,
    pub matches_oracle: bool,
    pub matches_paper: bool,
    pub infeasible_model: bool,
    pub notes: Vec<String>,
}

fn relative(value: f64, reference: f64) -> f64 {
    (value - reference) / reference.abs()
}

/// Builds the reconciliation row for one batch. Without an oracle result
/// the oracle columns stay empty and no model-feasibility verdict is made.
pub fn reconcile(
    problem: &str,
    sense: Sense,
    strategy: StrategyKind,
    bounds_mode: BoundsMode,
    stats: &RunStatistics,
    oracle: Option<&OracleResult>,
    reference: Option<&ReferenceRow>,
) -> ReconciliationRow {
    let infeasible_model = oracle.is_some_and(|o| !o.feasible);
    let oracle_best = oracle.and_then(|o| o.feasible.then_some(o.best_objective));
    let delta_oracle = oracle_best.map(|o| relative(stats.best, o));
    let delta_paper = reference.map(|r| relative(stats.best, r.value));
    let within = |d: Option<f64>| d.is_some_and(|d| d.abs() <= MATCH_TOLERANCE);

    let mut notes = Vec::new();
    if infeasible_model {
        notes.push(format!(
            "model infeasible ({}): oracle minimum violation {:.4}; runs return the minimum-violation region",
            bounds_mode.as_str(),
            oracle.map_or(f64::NAN, |o| o.min_violation)
        ));
    }
    let best_violation = crate::problem::violation(&stats.best_constraints);
    if best_violation > crate::FEASIBILITY_TOL {
        notes.push(format!(
            "best run violates constraints by {best_violation:.3e}"
        ));
    }
    if let (Some(o), Some(r)) = (oracle_best, reference) {
        if sense.better(r.value, o) && relative(r.value, o).abs() > MATCH_TOLERANCE {
            notes.push(format!(
                "published {} exceeds the feasible optimum {:.6} found by the oracle; not reproducible under this model",
                r.value, o
            ));
        }
    }
    ReconciliationRow {
        problem: problem.to_string(),
        strategy,
        bounds_mode,
        stats: stats.clone(),
        oracle_best,
        oracle_min_violation: oracle.map(|o| o.min_violation),
        paper_value: reference.map(|r| r.value),
        paper_table: reference.map(|r| r.table),
        matches_oracle: within(delta_oracle),
        matches_paper: within(delta_paper),
        delta_oracle,
        delta_paper,
        infeasible_model,
        notes,
    }
}
