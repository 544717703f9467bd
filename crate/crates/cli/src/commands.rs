//! Verb implementations. Each returns the process exit code on success.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

use ci_core::harness::{
    oracle_search, reconcile, run_batch, summarize, table_batches, ExperimentPlan, OracleResult,
    ReconciliationRow, ReferenceTable, DEFAULT_BASE_SEED, DEFAULT_ORACLE_BUDGET,
};
use ci_core::{registry, BoundsMode, ProblemSpec, RunResult, StrategyKind};

use crate::args::{OracleArgs, ReproduceArgs, RunArgs};
use crate::config::{load_config, resolve, FileConfig};
use crate::error::CliError;
use crate::output::{write_results_csv, write_summary_csv, write_trace_csv, BatchKey};
use crate::report::comparison_text;

/// Exit code for a completed command whose model the oracle found infeasible.
pub const EXIT_INFEASIBLE_MODEL: i32 = 2;

/// Environment variable holding the worker-thread count for batches.
pub const THREADS_ENV: &str = "CI_OPT_THREADS";

/// Sizes the global worker pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_ENV}: `{value}` is not a positive integer"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// The table holding the per-problem comparison for `(problem, strategy)`.
pub fn reference_table_for(problem: &str, strategy: StrategyKind) -> Option<u32> {
    match (problem, strategy) {
        ("ajmb", _) => Some(11),
        ("ajmd", _) => Some(12),
        ("wjm", _) => Some(13),
        ("usm", _) => Some(14),
        ("grinding", _) => Some(15),
        ("g1" | "g4" | "g6", StrategyKind::Tanh) => Some(6),
        ("g1" | "g4" | "g6", StrategyKind::Modulus) => Some(7),
        _ => None,
    }
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Runs a batch, reporting failed runs on stderr.
fn execute_batch(plan: &ExperimentPlan) -> Result<Vec<RunResult>, CliError> {
    let mut ok = Vec::with_capacity(plan.runs);
    for (i, r) in run_batch(plan)?.into_iter().enumerate() {
        match r {
            Ok(r) => ok.push(r),
            Err(e) => eprintln!(
                "warning: {} {} seed {}: {e}",
                plan.problem,
                plan.strategy,
                plan.base_seed.wrapping_add(i as u64)
            ),
        }
    }
    if ok.is_empty() {
        return Err(CliError::Internal(format!(
            "every run of {} {} failed",
            plan.problem, plan.strategy
        )));
    }
    Ok(ok)
}

struct Batch {
    key: BatchKey,
    results: Vec<RunResult>,
    row: ReconciliationRow,
}

fn batch(
    plan: &ExperimentPlan,
    problem: &ProblemSpec,
    oracle: Option<&OracleResult>,
    table: Option<u32>,
    references: &ReferenceTable,
) -> Result<Batch, CliError> {
    let results = execute_batch(plan)?;
    let stats = summarize(&results, problem.sense)?;
    let reference = table.and_then(|t| references.ci_value(t, &plan.problem, plan.strategy));
    let row = reconcile(
        &plan.problem,
        problem.sense,
        plan.strategy,
        plan.bounds_mode,
        &stats,
        oracle,
        reference,
    );
    Ok(Batch {
        key: BatchKey {
            problem: plan.problem.clone(),
            strategy: plan.strategy,
            bounds_mode: plan.bounds_mode,
        },
        results,
        row,
    })
}

fn write_batches(batches: &[Batch], out: &Path, traces: bool) -> Result<(), CliError> {
    create_dir(out)?;
    let results: Vec<(BatchKey, &RunResult)> = batches
        .iter()
        .flat_map(|b| b.results.iter().map(|r| (b.key.clone(), r)))
        .collect();
    write_results_csv(&results, &out.join("results.csv"))?;
    let rows: Vec<(BatchKey, ReconciliationRow)> = batches
        .iter()
        .map(|b| (b.key.clone(), b.row.clone()))
        .collect();
    write_summary_csv(&rows, &out.join("summary.csv"))?;
    if traces {
        let dir = out.join("traces");
        create_dir(&dir)?;
        for (key, r) in &results {
            let name = format!(
                "{}_{}_seed{}.csv",
                key.problem_label(),
                key.strategy,
                r.seed
            );
            write_trace_csv(&r.trace, &dir.join(name))?;
        }
    }
    Ok(())
}

pub fn run(args: &RunArgs) -> Result<i32, CliError> {
    let file = match &args.config {
        Some(path) => load_config(path)?,
        None => FileConfig::default(),
    };
    let settings = resolve(args, &file)?;
    let plan = &settings.plan;
    let problem = plan.problem_spec()?;
    let references = ReferenceTable::builtin();
    let table = reference_table_for(&plan.problem, plan.strategy);
    let b = batch(plan, &problem, None, table, &references)?;
    let batches = [b];
    let rows: Vec<(BatchKey, ReconciliationRow)> = batches
        .iter()
        .map(|b| (b.key.clone(), b.row.clone()))
        .collect();
    print!("{}", comparison_text(None, &rows, &references));
    if let Some(out) = &settings.out {
        write_batches(&batches, out, true)?;
    }
    Ok(0)
}

pub fn oracle(args: &OracleArgs) -> Result<i32, CliError> {
    let mode: BoundsMode = args.bounds_mode.into();
    let problem = registry::get(&args.problem, mode)?;
    let r = oracle_search(&problem, args.budget, args.seed)?;
    println!(
        "problem        {} ({}, {})",
        problem.name,
        problem.sense,
        mode.as_str()
    );
    for (v, x) in problem.variables.iter().zip(&r.best_x) {
        println!("  {:<12} {x}", v.name);
    }
    println!("objective      {}", r.best_objective);
    for (name, g) in problem.constraint_names.iter().zip(&r.best_constraints) {
        println!("  g {:<10} {g}", name);
    }
    println!("feasible       {}", r.feasible);
    println!("min_violation  {}", r.min_violation);
    println!("samples_used   {}", r.samples_used);
    Ok(if r.feasible { 0 } else { EXIT_INFEASIBLE_MODEL })
}

pub fn reproduce(args: &ReproduceArgs) -> Result<i32, CliError> {
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("out/table{}", args.table)));
    let references = ReferenceTable::builtin();
    let mut oracles: HashMap<(&str, BoundsMode), OracleResult> = HashMap::new();
    let mut batches = Vec::new();
    for (name, strategy, mode) in table_batches(args.table)? {
        let plan = ExperimentPlan::new(name, strategy).with_bounds_mode(mode);
        let problem = plan.problem_spec()?;
        if let Entry::Vacant(slot) = oracles.entry((name, mode)) {
            slot.insert(oracle_search(
                &problem,
                DEFAULT_ORACLE_BUDGET,
                DEFAULT_BASE_SEED,
            )?);
        }
        let oracle = &oracles[&(name, mode)];
        batches.push(batch(
            &plan,
            &problem,
            Some(oracle),
            Some(args.table),
            &references,
        )?);
    }
    write_batches(&batches, &out, false)?;
    let rows: Vec<(BatchKey, ReconciliationRow)> = batches
        .iter()
        .map(|b| (b.key.clone(), b.row.clone()))
        .collect();
    let text = comparison_text(Some(args.table), &rows, &references);
    write_text(&out.join("comparison.txt"), &text)?;
    print!("{text}");
    let infeasible = oracles
        .iter()
        .any(|((_, mode), o)| *mode == BoundsMode::AsWritten && !o.feasible);
    Ok(if infeasible { EXIT_INFEASIBLE_MODEL } else { 0 })
}

pub fn list() -> Result<i32, CliError> {
    println!(
        "strategies: {}",
        StrategyKind::ALL.map(StrategyKind::as_str).join(", ")
    );
    println!("bounds modes: as-written, paper-calibrated\n");
    print!("{}", ci_core::problem::catalog());
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_problem_has_a_table_for_tanh() {
        for name in registry::NAMES {
            assert!(
                reference_table_for(name, StrategyKind::Tanh).is_some(),
                "{name}"
            );
        }
        assert_eq!(reference_table_for("g4", StrategyKind::Triangular), None);
        assert_eq!(
            reference_table_for("wjm", StrategyKind::Triangular),
            Some(13)
        );
    }
}
