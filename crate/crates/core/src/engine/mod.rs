//! The Cohort Intelligence learning loop.
//!
//! Each attempt every candidate draws `trials` decision vectors from its own
//! sampling intervals and keeps the one the constraint strategy scores
//! highest as its behavior; the cohort's behaviors are scored together; each
//! candidate then picks a behavior to follow by roulette wheel and shrinks
//! its intervals around the followed vector. The best vector ever evaluated
//! is reported, ranked by [`Standing`].

mod intervals;
mod selection;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, RunError};
use crate::problem::{violation, Evaluation, ProblemSpec};
use crate::rng::RngStream;
use crate::strategy::{aggregate_constraints, selection_weights, StrategyParams};
use crate::FEASIBILITY_TOL;

pub use intervals::SamplingIntervals;
pub use selection::roulette;

/// Roulette weight given to a candidate whose evaluation failed.
pub const FAILED_WEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CohortConfig {
    pub candidates: usize,
    /// Vectors each candidate samples per attempt before settling on one.
    pub trials: usize,
    pub reduction: f64,
    pub max_attempts: usize,
    /// Stop once every relative interval width is at or below this.
    pub width_threshold: f64,
    pub stagnation_window: usize,
    pub stagnation_tol: f64,
}

impl Default for CohortConfig {
    fn default() -> Self {
        Self {
            candidates: 5,
            trials: 10,
            reduction: 0.99,
            max_attempts: 5000,
            width_threshold: 1e-15,
            stagnation_window: 100,
            stagnation_tol: 1e-12,
        }
    }
}

impl CohortConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |name, value, reason| {
            Err(ConfigError::Parameter {
                name,
                value,
                reason,
            })
        };
        if self.candidates == 0 {
            return fail("candidates", 0.0, "must be at least 1");
        }
        if self.trials == 0 {
            return fail("trials", 0.0, "must be at least 1");
        }
        if !(self.reduction > 0.0 && self.reduction <= 1.0) {
            return fail("reduction", self.reduction, "must lie in (0, 1]");
        }
        if self.max_attempts == 0 {
            return fail("max_attempts", 0.0, "must be at least 1");
        }
        if self.width_threshold.is_nan() || self.width_threshold <= 0.0 {
            return fail("width_threshold", self.width_threshold, "must be positive");
        }
        if self.stagnation_window == 0 {
            return fail("stagnation_window", 0.0, "must be at least 1");
        }
        Ok(())
    }
}

/// Rank of an evaluated point: feasible beats infeasible; feasible points
/// compare by objective, infeasible ones by total violation then objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standing {
    /// Objective in minimization sense.
    pub objective: f64,
    pub violation: f64,
    pub feasible: bool,
}

impl Standing {
    pub fn new(objective_min: f64, constraints: &[f64]) -> Self {
        Self {
            objective: objective_min,
            violation: violation(constraints),
            feasible: constraints.iter().all(|&g| g <= FEASIBILITY_TOL),
        }
    }

    pub fn better_than(&self, other: &Standing) -> bool {
        match (self.feasible, other.feasible) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => self.objective < other.objective,
            (false, false) => {
                self.violation < other.violation
                    || (self.violation == other.violation && self.objective < other.objective)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub attempt: usize,
    /// Best-ever objective in native sense; NaN until something evaluated.
    pub best_objective: f64,
    /// Largest relative interval width across the cohort after shrinking.
    pub max_rel_width: f64,
    /// `Σ max(0, g)` at the best-ever point.
    pub agg_violation: f64,
    /// Objective of the best behavior of this attempt, native sense; NaN if
    /// every evaluation failed. Drives the stagnation rule.
    pub attempt_best: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub entries: Vec<TraceEntry>,
}

impl ConvergenceTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last(&self) -> Option<&TraceEntry> {
        self.entries.last()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_x: Vec<f64>,
    /// Native sense.
    pub best_objective: f64,
    pub best_constraints: Vec<f64>,
    pub attempts: usize,
    pub evaluations: usize,
    pub elapsed: Duration,
    pub trace: ConvergenceTrace,
    pub seed: u64,
}

impl RunResult {
    pub fn violation(&self) -> f64 {
        violation(&self.best_constraints)
    }

    pub fn feasible(&self) -> bool {
        self.best_constraints.iter().all(|&g| g <= FEASIBILITY_TOL)
    }
}

/// Stopping rule: every interval collapsed (relative width at the threshold
/// or at the floating-point floor), the per-attempt best objective stayed
/// within `stagnation_tol` over the window, or attempt cap reached.
pub fn has_converged(
    trace: &ConvergenceTrace,
    intervals: &[SamplingIntervals],
    config: &CohortConfig,
) -> bool {
    if trace.is_empty() {
        return false;
    }
    if trace.len() >= config.max_attempts {
        return true;
    }
    if intervals
        .iter()
        .all(|iv| iv.is_collapsed(config.width_threshold, config.reduction))
    {
        return true;
    }
    if trace.len() > config.stagnation_window {
        let window = &trace.entries[trace.len() - 1 - config.stagnation_window..];
        let (lo, hi) = window
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
                (lo.min(e.attempt_best), hi.max(e.attempt_best))
            });
        // f64::min/max skip NaN, so only a window with no evaluation at all
        // yields an empty range, which never counts as stagnant
        if hi - lo < config.stagnation_tol {
            return true;
        }
    }
    false
}

struct Best {
    x: Vec<f64>,
    eval: Evaluation,
    standing: Standing,
}

/// Runs one seeded optimization.
pub fn run(
    problem: &ProblemSpec,
    strategy: &StrategyParams,
    config: &CohortConfig,
    seed: u64,
) -> Result<RunResult, RunError> {
    config.validate()?;
    strategy.validate()?;
    let start = Instant::now();
    let cohort = config.candidates;
    let mut rngs: Vec<RngStream> = (0..cohort as u64)
        .map(|i| RngStream::substream(seed, i))
        .collect();
    let mut intervals = vec![SamplingIntervals::from_problem(problem)?; cohort];
    let mut trace = ConvergenceTrace::default();
    let mut best: Option<Best> = None;
    let mut evaluations = 0;
    let sense = problem.sense;

    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(cohort);
    let mut evals: Vec<Option<Evaluation>> = Vec::with_capacity(cohort);
    for attempt in 1..=config.max_attempts {
        xs.clear();
        evals.clear();
        let mut attempt_best: Option<Standing> = None;
        for (iv, rng) in intervals.iter().zip(rngs.iter_mut()) {
            let trial_x: Vec<Vec<f64>> = (0..config.trials).map(|_| iv.sample(rng)).collect();
            let trial_e: Vec<Option<Evaluation>> =
                trial_x.iter().map(|x| problem.evaluate(x).ok()).collect();
            evaluations += config.trials;
            for (x, eval) in trial_x.iter().zip(&trial_e) {
                let Some(eval) = eval else { continue };
                let standing = Standing::new(sense.to_min(eval.objective), &eval.constraints);
                if best
                    .as_ref()
                    .is_none_or(|b| standing.better_than(&b.standing))
                {
                    best = Some(Best {
                        x: x.clone(),
                        eval: eval.clone(),
                        standing,
                    });
                }
            }
            let keep = if config.trials == 1 {
                0
            } else {
                let w = cohort_weights(&trial_e, sense, strategy)
                    .map_err(|source| RunError::Weights { attempt, source })?;
                // first maximum, so ties resolve deterministically
                (0..w.len()).fold(0, |k, j| if w[j] > w[k] { j } else { k })
            };
            if let Some(eval) = &trial_e[keep] {
                let standing = Standing::new(sense.to_min(eval.objective), &eval.constraints);
                if attempt_best.is_none_or(|b| standing.better_than(&b)) {
                    attempt_best = Some(standing);
                }
            }
            xs.push(trial_x.into_iter().nth(keep).expect("keep < trials"));
            evals.push(trial_e.into_iter().nth(keep).expect("keep < trials"));
        }

        let weights = cohort_weights(&evals, sense, strategy)
            .map_err(|source| RunError::Weights { attempt, source })?;
        for i in 0..cohort {
            let followed = roulette(&weights, &mut rngs[i])
                .map_err(|source| RunError::Selection { attempt, source })?;
            intervals[i] = intervals[i].shrunk(&xs[followed], config.reduction);
            debug_assert!(intervals[i].is_nested());
        }

        trace.entries.push(TraceEntry {
            attempt,
            best_objective: best.as_ref().map_or(f64::NAN, |b| b.eval.objective),
            max_rel_width: intervals
                .iter()
                .map(SamplingIntervals::max_relative_width)
                .fold(0.0, f64::max),
            agg_violation: best.as_ref().map_or(f64::NAN, |b| b.standing.violation),
            attempt_best: attempt_best.map_or(f64::NAN, |b| sense.from_min(b.objective)),
        });
        if has_converged(&trace, &intervals, config) {
            break;
        }
    }

    let best = best.ok_or(RunError::NoValidEvaluation {
        attempts: trace.len(),
    })?;
    Ok(RunResult {
        best_x: best.x,
        best_objective: best.eval.objective,
        best_constraints: best.eval.constraints,
        attempts: trace.len(),
        evaluations,
        elapsed: start.elapsed(),
        trace,
        seed,
    })
}

/// Strategy weights for the successfully evaluated candidates; failed ones
/// get [`FAILED_WEIGHT`]. An all-failed cohort follows uniformly.
fn cohort_weights(
    evals: &[Option<Evaluation>],
    sense: crate::problem::Sense,
    strategy: &StrategyParams,
) -> Result<Vec<f64>, crate::error::WeightError> {
    let valid: Vec<&Evaluation> = evals.iter().flatten().collect();
    if valid.is_empty() {
        return Ok(vec![1.0 / evals.len() as f64; evals.len()]);
    }
    let objectives: Vec<f64> = valid.iter().map(|e| sense.to_min(e.objective)).collect();
    let aggregates: Vec<f64> = valid
        .iter()
        .map(|e| aggregate_constraints(&e.constraints, strategy))
        .collect();
    let mut scored = selection_weights(&objectives, &aggregates, strategy)?.into_iter();
    let mut weights: Vec<f64> = evals
        .iter()
        .map(|e| match e {
            Some(_) => scored.next().expect("one weight per valid candidate"),
            None => FAILED_WEIGHT,
        })
        .collect();
    if valid.len() < evals.len() {
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
    }
    Ok(weights)
}
