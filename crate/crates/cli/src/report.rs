//! Human-readable comparison of artifact, oracle and published values.

use std::fmt::Write;

use ci_core::harness::{ReconciliationRow, ReferenceTable};

use crate::output::BatchKey;

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.6}"))
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{:+.2}", v * 100.0))
}

fn list(vs: &[f64]) -> String {
    vs.iter()
        .map(|v| format!("{v:.4e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Comparison table for one published table: artifact rows, the published
/// rows, then notes.
pub fn comparison_text(
    table: Option<u32>,
    rows: &[(BatchKey, ReconciliationRow)],
    references: &ReferenceTable,
) -> String {
    let mut out = String::new();
    let runs = rows.first().map_or(0, |(_, r)| r.stats.runs);
    match table {
        Some(t) => writeln!(out, "Table {t} reproduction ({runs} runs per batch)").unwrap(),
        None => writeln!(out, "Batch summary ({runs} runs)").unwrap(),
    }
    writeln!(
        out,
        "best is the best run ranked feasible-first; sd is the population standard deviation of the per-run bests.\n"
    )
    .unwrap();
    writeln!(
        out,
        "{:<24} {:<11} {:>14} {:<24} {:>14} {:>10} {:>5} {:>9} {:>14} {:>12} {:>9} {:>9}  flags",
        "problem",
        "strategy",
        "best",
        "constraints",
        "mean",
        "sd",
        "feas",
        "attempts",
        "oracle",
        "paper",
        "d_oracle%",
        "d_paper%"
    )
    .unwrap();
    for (key, r) in rows {
        let s = &r.stats;
        let mut flags = Vec::new();
        if r.matches_oracle {
            flags.push("matches-oracle");
        }
        if r.matches_paper {
            flags.push("matches-paper");
        }
        if r.infeasible_model {
            flags.push("infeasible-model");
        }
        writeln!(
            out,
            "{:<24} {:<11} {:>14.6} {:<24} {:>14.6} {:>10.3e} {:>5} {:>9.1} {:>14} {:>12} {:>9} {:>9}  {}",
            key.problem_label(),
            key.strategy.as_str(),
            s.best,
            list(&s.best_constraints),
            s.mean,
            s.sd,
            format!("{}/{}", s.feasible_run_count, s.runs),
            s.mean_attempts,
            num(r.oracle_best),
            num(r.paper_value),
            pct(r.delta_oracle),
            pct(r.delta_paper),
            flags.join(",")
        )
        .unwrap();
    }

    if let Some(t) = table {
        writeln!(out, "\nPublished rows (Table {t}):").unwrap();
        writeln!(
            out,
            "{:<10} {:<12} {:>14} {:<22} {:>11} {:>10}",
            "problem", "algorithm", "value", "constraints", "sd", "iterations"
        )
        .unwrap();
        for r in references.table(t) {
            writeln!(
                out,
                "{:<10} {:<12} {:>14} {:<22} {:>11} {:>10}",
                r.problem,
                r.algorithm,
                r.value,
                r.constraints.as_deref().map_or_else(|| "-".into(), list),
                r.sd.map_or_else(|| "NA".into(), |v| format!("{v:.3e}")),
                r.iterations.map_or_else(|| "NA".into(), |v| v.to_string()),
            )
            .unwrap();
        }
    }

    let notes: Vec<String> = rows
        .iter()
        .flat_map(|(k, r)| {
            r.notes
                .iter()
                .map(move |n| format!("- {} {}: {n}", k.problem_label(), k.strategy))
        })
        .collect();
    if !notes.is_empty() {
        writeln!(out, "\nNotes:").unwrap();
        for n in notes {
            writeln!(out, "{n}").unwrap();
        }
    }
    out
}
