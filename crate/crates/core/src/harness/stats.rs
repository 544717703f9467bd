use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::engine::{RunResult, Standing};
use crate::error::HarnessError;
use crate::problem::Sense;

/// Aggregate over a batch of runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStatistics {
    pub runs: usize,
    /// Best per-run best, ranked feasible-first (see [`Standing`]); native sense.
    pub best: f64,
    pub best_constraints: Vec<f64>,
    pub best_x: Vec<f64>,
    pub best_seed: u64,
    /// Mean of the per-run bests, feasible or not.
    pub mean: f64,
    /// Population standard deviation of the per-run bests.
    pub sd: f64,
    pub mean_attempts: f64,
    pub mean_evaluations: f64,
    pub mean_elapsed: Duration,
    pub feasible_run_count: usize,
}

/// Statistics over `results`; the value does not depend on their order.
pub fn summarize(results: &[RunResult], sense: Sense) -> Result<RunStatistics, HarnessError> {
    let n = results.len();
    if n == 0 {
        return Err(HarnessError::NoResults);
    }
    let standing =
        |r: &RunResult| Standing::new(sense.to_min(r.best_objective), &r.best_constraints);
    let best = results
        .iter()
        .reduce(|a, b| {
            let (sa, sb) = (standing(a), standing(b));
            if sb.better_than(&sa) || (!sa.better_than(&sb) && b.seed < a.seed) {
                b
            } else {
                a
            }
        })
        .expect("non-empty");

    // sorted sums keep the floating-point result independent of input order
    let mut bests: Vec<f64> = results.iter().map(|r| r.best_objective).collect();
    bests.sort_by(f64::total_cmp);
    let mean = bests.iter().sum::<f64>() / n as f64;
    let mut squares: Vec<f64> = bests.iter().map(|b| (b - mean).powi(2)).collect();
    squares.sort_by(f64::total_cmp);
    let sd = (squares.iter().sum::<f64>() / n as f64).sqrt();

    let attempts: usize = results.iter().map(|r| r.attempts).sum();
    let evaluations: usize = results.iter().map(|r| r.evaluations).sum();
    let elapsed: Duration = results.iter().map(|r| r.elapsed).sum();
    Ok(RunStatistics {
        runs: n,
        best: best.best_objective,
        best_constraints: best.best_constraints.clone(),
        best_x: best.best_x.clone(),
        best_seed: best.seed,
        mean,
        sd,
        mean_attempts: attempts as f64 / n as f64,
        mean_evaluations: evaluations as f64 / n as f64,
        mean_elapsed: elapsed / n as u32,
        feasible_run_count: results.iter().filter(|r| r.feasible()).count(),
    })
}
