//! Constrained Cohort Intelligence (CI) optimization.
//!
//! A cohort of candidates samples decision vectors from per-variable
//! intervals, scores them through one of three constraint-handling
//! strategies (triangular probability, modulus penalty, hyperbolic tangent),
//! follows a behavior chosen by roulette wheel and shrinks its intervals
//! around it. The crate also carries the benchmark and machining problem
//! suite, a brute-force oracle, and the seeded multi-run experiment harness.

pub mod engine;
pub mod error;
pub mod harness;
pub mod problem;
pub mod rng;
pub mod strategy;

pub use engine::{
    run, CohortConfig, ConvergenceTrace, RunResult, SamplingIntervals, Standing, TraceEntry,
};
pub use error::{ConfigError, EvalError, HarnessError, RunError, SelectionError, WeightError};
pub use problem::{registry, BoundsMode, ProblemSpec, Sense};
pub use rng::RngStream;
pub use strategy::{StrategyKind, StrategyParams};

/// Constraint values at or below this are treated as satisfied.
pub const FEASIBILITY_TOL: f64 = 1e-9;
