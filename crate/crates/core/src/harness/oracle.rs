//! Brute-force reference optimizer: uniform sampling over the bounds, then
//! line-search refinement of the best sample.
//!
//! Points are compared with the same feasible-first ranking as the engine,
//! so an infeasible problem yields its minimum-violation point. Golden-section
//! search only ever compares two points, which lets it work directly on that
//! ranking instead of a scalar merit function.

use serde::{Deserialize, Serialize};

use crate::engine::Standing;
use crate::error::HarnessError;
use crate::problem::{Evaluation, ProblemSpec};
use crate::rng::RngStream;

pub const DEFAULT_ORACLE_BUDGET: usize = 1_000_000;
pub const MIN_ORACLE_BUDGET: usize = 10_000;

/// A refinement pass counts as progress when it improves the objective (or,
/// while infeasible, the violation) by more than this relative amount.
const REFINE_TOL: f64 = 1e-10;
/// Refinement stops after this many consecutive passes without progress;
/// random directions make a single empty pass weak evidence of convergence.
const STALL_PASSES: usize = 20;
const MAX_PASSES: usize = 2000;
/// Points of the coarse scan that brackets each line search.
const LINE_GRID: usize = 32;
const GOLDEN_STEPS: usize = 80;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub best_x: Vec<f64>,
    /// Native sense; NaN if no sample evaluated successfully.
    pub best_objective: f64,
    pub best_constraints: Vec<f64>,
    pub feasible: bool,
    /// `Σ max(0, g)` at `best_x`: at most the feasibility tolerance per
    /// constraint when feasible, the smallest violation found otherwise.
    pub min_violation: f64,
    /// Model evaluations spent, sampling and refinement together.
    pub samples_used: usize,
}

#[derive(Debug, Clone)]
struct Point {
    x: Vec<f64>,
    eval: Evaluation,
    standing: Standing,
}

struct Searcher<'a> {
    problem: &'a ProblemSpec,
    evaluations: usize,
}

impl Searcher<'_> {
    fn point(&mut self, x: Vec<f64>) -> Option<Point> {
        self.evaluations += 1;
        let eval = self.problem.evaluate(&x).ok()?;
        let standing = Standing::new(self.problem.sense.to_min(eval.objective), &eval.constraints);
        Some(Point { x, eval, standing })
    }

    /// Whether `a` ranks strictly above `b`; a failed evaluation ranks last.
    fn above(a: &Option<Point>, b: &Option<Point>) -> bool {
        match (a, b) {
            (Some(a), Some(b)) => a.standing.better_than(&b.standing),
            (Some(_), None) => true,
            (None, _) => false,
        }
    }

    /// Searches the segment of `base + t d` inside the bounds; returns the
    /// best point found if it ranks above `base`.
    fn line_search(&mut self, base: &Point, d: &[f64]) -> Option<Point> {
        let (lower, upper) = (self.problem.lower(), self.problem.upper());
        let (mut t_lo, mut t_hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..d.len() {
            if d[i] == 0.0 {
                continue;
            }
            let (a, b) = ((lower[i] - base.x[i]) / d[i], (upper[i] - base.x[i]) / d[i]);
            t_lo = t_lo.max(a.min(b));
            t_hi = t_hi.min(a.max(b));
        }
        if !(t_lo.is_finite() && t_hi.is_finite() && t_hi > t_lo) {
            return None;
        }
        let at = |t: f64| -> Vec<f64> {
            (0..d.len())
                .map(|i| (base.x[i] + t * d[i]).clamp(lower[i], upper[i]))
                .collect()
        };

        // coarse scan, with the base point standing in at t = 0
        let step = (t_hi - t_lo) / LINE_GRID as f64;
        let mut ts: Vec<f64> = (0..=LINE_GRID).map(|k| t_lo + k as f64 * step).collect();
        ts.push(0.0);
        ts.sort_by(f64::total_cmp);
        let mut scan: Vec<Option<Point>> = Vec::with_capacity(ts.len());
        for &t in &ts {
            scan.push(if t == 0.0 {
                Some(base.clone())
            } else {
                self.point(at(t))
            });
        }
        let k = (0..scan.len()).fold(0, |k, j| {
            if Self::above(&scan[j], &scan[k]) {
                j
            } else {
                k
            }
        });

        // golden-section refinement inside the neighbors of the scan winner
        let (mut a, mut b) = (ts[k.saturating_sub(1)], ts[(k + 1).min(ts.len() - 1)]);
        let mut best = scan.swap_remove(k);
        let mut c = b - INV_PHI * (b - a);
        let mut e = a + INV_PHI * (b - a);
        let mut pc = self.point(at(c));
        let mut pe = self.point(at(e));
        for _ in 0..GOLDEN_STEPS {
            if Self::above(&pc, &pe) {
                b = e;
                e = c;
                pe = pc;
                c = b - INV_PHI * (b - a);
                pc = self.point(at(c));
            } else {
                a = c;
                c = e;
                pc = pe;
                e = a + INV_PHI * (b - a);
                pe = self.point(at(e));
            }
            if b - a <= f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
                break;
            }
        }
        for p in [pc, pe] {
            if Self::above(&p, &best) {
                best = p;
            }
        }
        best.filter(|p| p.standing.better_than(&base.standing))
    }
}

/// Uniform sampling of `budget` points followed by line-search refinement.
///
/// Each refinement pass searches along every coordinate axis, then along
/// `2n` random directions that mix two coordinates and `n` that mix all of
/// them, so the search can slide along an active constraint that no single
/// axis move can follow.
pub fn oracle_search(
    problem: &ProblemSpec,
    budget: usize,
    seed: u64,
) -> Result<OracleResult, HarnessError> {
    if budget < MIN_ORACLE_BUDGET {
        return Err(HarnessError::OracleBudget(budget));
    }
    let mut rng = RngStream::new(seed);
    let mut s = Searcher {
        problem,
        evaluations: 0,
    };
    let (lower, upper) = (problem.lower(), problem.upper());
    let n = problem.dimension();
    let mut best: Option<Point> = None;
    for _ in 0..budget {
        let x: Vec<f64> = (0..n).map(|i| rng.uniform(lower[i], upper[i])).collect();
        let p = s.point(x);
        if Searcher::above(&p, &best) {
            best = p;
        }
    }
    let Some(mut best) = best else {
        return Ok(OracleResult {
            best_x: Vec::new(),
            best_objective: f64::NAN,
            best_constraints: Vec::new(),
            feasible: false,
            min_violation: f64::INFINITY,
            samples_used: s.evaluations,
        });
    };

    let width: Vec<f64> = (0..n).map(|i| upper[i] - lower[i]).collect();
    let mut stalled = 0;
    for _ in 0..MAX_PASSES {
        let before = best.standing;
        for i in 0..n {
            let mut d = vec![0.0; n];
            d[i] = width[i];
            if let Some(p) = s.line_search(&best, &d) {
                best = p;
            }
        }
        for _ in 0..2 * n {
            let mut d = vec![0.0; n];
            let i = (rng.unit() * n as f64) as usize % n;
            let j = (i + 1 + (rng.unit() * (n - 1).max(1) as f64) as usize) % n;
            d[i] = width[i] * (2.0 * rng.unit() - 1.0);
            d[j] = width[j] * (2.0 * rng.unit() - 1.0);
            if let Some(p) = s.line_search(&best, &d) {
                best = p;
            }
        }
        for _ in 0..n {
            let d: Vec<f64> = width.iter().map(|w| w * (2.0 * rng.unit() - 1.0)).collect();
            if let Some(p) = s.line_search(&best, &d) {
                best = p;
            }
        }
        if improved(&before, &best.standing) {
            stalled = 0;
        } else {
            stalled += 1;
            if stalled == STALL_PASSES {
                break;
            }
        }
    }

    Ok(OracleResult {
        feasible: best.standing.feasible,
        min_violation: best.standing.violation,
        best_objective: best.eval.objective,
        best_constraints: best.eval.constraints,
        best_x: best.x,
        samples_used: s.evaluations,
    })
}

fn improved(before: &Standing, after: &Standing) -> bool {
    if before.feasible != after.feasible {
        return true;
    }
    let (old, new) = if after.feasible {
        (before.objective, after.objective)
    } else {
        (before.violation, after.violation)
    };
    old - new > REFINE_TOL * old.abs().max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{registry, BoundsMode, Sense};

    #[test]
    fn sphere_refines_to_origin() {
        let p = ProblemSpec::from_fn(
            "sphere",
            Sense::Minimize,
            &[(-1.0, 1.0), (-1.0, 1.0)],
            0,
            |x| {
                Ok(Evaluation {
                    objective: x[0] * x[0] + x[1] * x[1],
                    constraints: vec![],
                })
            },
        )
        .unwrap();
        let r = oracle_search(&p, MIN_ORACLE_BUDGET, 1).unwrap();
        assert!(r.feasible);
        assert!(r.best_objective <= 1e-8, "{}", r.best_objective);
        assert!(r.samples_used > MIN_ORACLE_BUDGET);
    }

    #[test]
    fn budget_floor() {
        let p = registry::get("ajmb", BoundsMode::AsWritten).unwrap();
        assert!(matches!(
            oracle_search(&p, 9_999, 1),
            Err(HarnessError::OracleBudget(9_999))
        ));
    }

    #[test]
    fn brittle_jet_optimum() {
        let p = registry::get("ajmb", BoundsMode::AsWritten).unwrap();
        let r = oracle_search(&p, MIN_ORACLE_BUDGET, 3).unwrap();
        assert!(r.feasible);
        assert!(r.best_objective >= 8.25, "{}", r.best_objective);
        assert!(r.best_constraints[0] <= crate::FEASIBILITY_TOL);
    }

    #[test]
    fn grinding_is_infeasible_as_written() {
        let p = registry::get("grinding", BoundsMode::AsWritten).unwrap();
        let r = oracle_search(&p, MIN_ORACLE_BUDGET, 5).unwrap();
        assert!(!r.feasible);
        assert!((r.best_constraints[1] - 6.3097).abs() < 0.01, "{:?}", r);
        assert!((r.best_x[0] - 0.86).abs() < 1e-6 && (r.best_x[1] - 5.0).abs() < 1e-6);
    }

    #[test]
    fn same_seed_same_answer() {
        let p = registry::get("usm", BoundsMode::AsWritten).unwrap();
        let a = oracle_search(&p, MIN_ORACLE_BUDGET, 9).unwrap();
        let b = oracle_search(&p, MIN_ORACLE_BUDGET, 9).unwrap();
        assert_eq!(a, b);
    }
}
