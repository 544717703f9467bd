//! Cross-module invariants of runs, weights and the oracle, exercised
//! through the public API.

use ci_core::harness::{oracle_search, run_batch, ExperimentPlan, MIN_ORACLE_BUDGET};
use ci_core::strategy::selection_weights;
use ci_core::{registry, run, BoundsMode, CohortConfig, StrategyKind, StrategyParams};
use proptest::prelude::*;

fn short_config(max_attempts: usize) -> CohortConfig {
    CohortConfig {
        max_attempts,
        ..CohortConfig::default()
    }
}

fn strategy_kind() -> impl Strategy<Value = StrategyKind> {
    prop::sample::select(StrategyKind::ALL.to_vec())
}

fn problem_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(registry::NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_keep_their_contract(name in problem_name(), kind in strategy_kind(), seed in any::<u64>()) {
        let problem = registry::get(name, BoundsMode::AsWritten).unwrap();
        let (k1, k2) = problem.default_strategy_bounds.unwrap();
        let params = StrategyParams::new(kind, k1, k2);
        let config = short_config(150);
        let r = run(&problem, &params, &config, seed).unwrap();

        prop_assert!(r.attempts >= 1 && r.attempts <= config.max_attempts);
        prop_assert_eq!(r.trace.len(), r.attempts);
        prop_assert_eq!(r.evaluations, r.attempts * config.candidates * config.trials);
        prop_assert!(problem.contains(&r.best_x));

        // the reported best is re-evaluable
        let e = problem.evaluate(&r.best_x).unwrap();
        prop_assert_eq!(e.objective, r.best_objective);
        prop_assert_eq!(&e.constraints, &r.best_constraints);

        // best-ever never worsens and interval widths never grow
        for pair in r.trace.entries.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert_eq!(b.attempt, a.attempt + 1);
            prop_assert!(b.max_rel_width <= a.max_rel_width);
            if a.agg_violation == 0.0 && b.agg_violation == 0.0 {
                prop_assert!(!problem.sense.better(a.best_objective, b.best_objective));
            } else {
                prop_assert!(b.agg_violation <= a.agg_violation);
            }
        }
    }

    #[test]
    fn smaller_penalty_wins_at_equal_objectives(
        f in -1e3f64..1e3,
        a in 0f64..1e3,
        extra in 1e-6f64..1e3,
        kind in prop::sample::select(vec![StrategyKind::Modulus, StrategyKind::Tanh]),
    ) {
        let p = StrategyParams::new(kind, -10.0, 1.0);
        let w = selection_weights(&[f, f], &[a, a + extra], &p).unwrap();
        prop_assert!(w[0] > w[1]);
    }

    #[test]
    fn scaling_modulus_penalties_keeps_the_ordering(
        aggs in prop::collection::vec(0f64..1e3, 2..10),
        scale in 1e-3f64..1e3,
    ) {
        let p = StrategyParams::new(StrategyKind::Modulus, -10.0, 1.0);
        let f = vec![1.0; aggs.len()];
        let scaled: Vec<f64> = aggs.iter().map(|a| a * scale).collect();
        let w = selection_weights(&f, &aggs, &p).unwrap();
        let ws = selection_weights(&f, &scaled, &p).unwrap();
        for i in 0..aggs.len() {
            for j in 0..aggs.len() {
                prop_assert_eq!(w[i] > w[j], ws[i] > ws[j]);
            }
        }
    }
}

/// No feasible run may beat the oracle's feasible best by more than 0.1%.
#[test]
fn feasible_runs_never_beat_the_oracle() {
    for name in ["ajmb", "usm", "wjm"] {
        let problem = registry::get(name, BoundsMode::AsWritten).unwrap();
        let oracle = oracle_search(&problem, 10 * MIN_ORACLE_BUDGET, 11).unwrap();
        assert!(oracle.feasible, "{name}");
        for kind in StrategyKind::ALL {
            let plan = ExperimentPlan::new(name, kind).with_runs(5);
            for r in run_batch(&plan).unwrap() {
                let r = r.unwrap();
                if !r.feasible() {
                    continue;
                }
                let margin = 1e-3 * oracle.best_objective.abs();
                assert!(
                    !problem
                        .sense
                        .better(r.best_objective, oracle.best_objective + margin),
                    "{name} {kind}: run {} beats oracle {}",
                    r.best_objective,
                    oracle.best_objective
                );
            }
        }
    }
}

#[test]
fn calibrated_bounds_only_change_ductile_abrasive_jet() {
    for name in registry::NAMES {
        let a = registry::get(name, BoundsMode::AsWritten).unwrap();
        let b = registry::get(name, BoundsMode::PaperCalibrated).unwrap();
        if name == "ajmd" {
            assert_ne!(a.lower(), b.lower());
        } else {
            assert_eq!((a.lower(), a.upper()), (b.lower(), b.upper()), "{name}");
        }
    }
}
