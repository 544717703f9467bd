//! CSV artifacts: per-run results, per-run traces, and batch summaries.
//!
//! Numbers use Rust's shortest round-trip formatting, so parsing a value
//! back yields the exact `f64` that was written.

use std::fs::File;
use std::path::Path;

use ci_core::harness::ReconciliationRow;
use ci_core::{BoundsMode, ConvergenceTrace, RunResult, StrategyKind};

use crate::error::CliError;

pub const RESULTS_HEADER: [&str; 10] = [
    "problem",
    "strategy",
    "bounds_mode",
    "seed",
    "best_objective",
    "constraint_values",
    "attempts",
    "evaluations",
    "elapsed_ms",
    "feasible",
];

pub const TRACE_HEADER: [&str; 4] = [
    "attempt",
    "best_objective",
    "max_rel_width",
    "agg_violation",
];

pub const SUMMARY_HEADER: [&str; 13] = [
    "problem",
    "strategy",
    "runs",
    "best",
    "mean",
    "sd",
    "mean_attempts",
    "mean_ms",
    "oracle_best",
    "paper_ref_value",
    "paper_ref_table",
    "delta_oracle_pct",
    "delta_paper_pct",
];

/// Identifies the batch a run belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchKey {
    pub problem: String,
    pub strategy: StrategyKind,
    pub bounds_mode: BoundsMode,
}

impl BatchKey {
    /// Problem label for files without a bounds-mode column: the plain name
    /// for published bounds, `name@mode` otherwise.
    pub fn problem_label(&self) -> String {
        match self.bounds_mode {
            BoundsMode::AsWritten => self.problem.clone(),
            mode => format!("{}@{}", self.problem, mode.as_str()),
        }
    }
}

fn writer(path: &Path) -> Result<csv::Writer<File>, CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Internal(format!("{}: {other:?}", path.display())),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn write_results_csv(rows: &[(BatchKey, &RunResult)], path: &Path) -> Result<(), CliError> {
    let mut w = writer(path)?;
    let fail = |e| csv_error(path, e);
    w.write_record(RESULTS_HEADER).map_err(fail)?;
    for (key, r) in rows {
        let constraints: Vec<String> = r.best_constraints.iter().map(f64::to_string).collect();
        w.write_record([
            key.problem.clone(),
            key.strategy.to_string(),
            key.bounds_mode.as_str().to_string(),
            r.seed.to_string(),
            r.best_objective.to_string(),
            constraints.join(";"),
            r.attempts.to_string(),
            r.evaluations.to_string(),
            (r.elapsed.as_secs_f64() * 1e3).to_string(),
            r.feasible().to_string(),
        ])
        .map_err(fail)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_trace_csv(trace: &ConvergenceTrace, path: &Path) -> Result<(), CliError> {
    let mut w = writer(path)?;
    let fail = |e| csv_error(path, e);
    w.write_record(TRACE_HEADER).map_err(fail)?;
    for e in &trace.entries {
        w.write_record([
            e.attempt.to_string(),
            e.best_objective.to_string(),
            e.max_rel_width.to_string(),
            e.agg_violation.to_string(),
        ])
        .map_err(fail)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_summary_csv(
    rows: &[(BatchKey, ReconciliationRow)],
    path: &Path,
) -> Result<(), CliError> {
    let mut w = writer(path)?;
    let fail = |e| csv_error(path, e);
    w.write_record(SUMMARY_HEADER).map_err(fail)?;
    for (key, r) in rows {
        let s = &r.stats;
        w.write_record([
            key.problem_label(),
            key.strategy.to_string(),
            s.runs.to_string(),
            s.best.to_string(),
            s.mean.to_string(),
            s.sd.to_string(),
            s.mean_attempts.to_string(),
            (s.mean_elapsed.as_secs_f64() * 1e3).to_string(),
            opt(r.oracle_best),
            opt(r.paper_value),
            r.paper_table
                .map_or_else(String::new, |t| format!("Table {t}")),
            opt(r.delta_oracle.map(|d| d * 100.0)),
            opt(r.delta_paper.map(|d| d * 100.0)),
        ])
        .map_err(fail)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
