//! Constrained problems: bounds, sense, and objective/constraint evaluators.
//!
//! Every constraint is exposed in canonical form, feasible iff `g <= 0`.

mod amp;
mod catalog;
mod gsuite;
pub mod registry;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, EvalError};

pub use amp::{
    AjmBrittle, AjmBrittleConstants, AjmDuctile, AjmDuctileConstants, Grinding, GrindingConstants,
    Usm, UsmConstants, Wjm, WjmConstants,
};
pub use catalog::catalog;
pub use gsuite::{g1, g4, g6, G1, G4, G6};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    /// Converts a native objective value into minimization sense.
    pub fn to_min(self, value: f64) -> f64 {
        match self {
            Sense::Maximize => -value,
            Sense::Minimize => value,
        }
    }

    /// Inverse of [`Sense::to_min`].
    pub fn from_min(self, value: f64) -> f64 {
        self.to_min(value)
    }

    /// True when `a` is strictly better than `b` in this sense.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsMode {
    /// Bounds exactly as published.
    #[default]
    AsWritten,
    /// Published bounds with the ductile abrasive-jet velocity floor lowered
    /// to 1.5e3 mm/s, where the published optimum actually lies.
    PaperCalibrated,
}

impl BoundsMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundsMode::AsWritten => "as_written",
            BoundsMode::PaperCalibrated => "paper_calibrated",
        }
    }
}

impl fmt::Display for BoundsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Objective value and canonical constraint values at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objective: f64,
    pub constraints: Vec<f64>,
}

impl Evaluation {
    /// Sum of positive constraint parts.
    pub fn violation(&self) -> f64 {
        violation(&self.constraints)
    }
}

/// `Σ max(0, g_j)`.
pub fn violation(constraints: &[f64]) -> f64 {
    constraints.iter().map(|g| g.max(0.0)).sum()
}

/// Objective and constraints of a problem, in its native units and sense.
pub trait Model: Send + Sync + fmt::Debug {
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError>;
}

/// Adapter turning a closure into a [`Model`].
pub struct FnModel<F>(pub F);

impl<F> fmt::Debug for FnModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnModel")
    }
}

impl<F> Model for FnModel<F>
where
    F: Fn(&[f64]) -> Result<Evaluation, EvalError> + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        (self.0)(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: &'static str,
    pub unit: &'static str,
    pub lower: f64,
    pub upper: f64,
}

impl Variable {
    pub const fn new(name: &'static str, unit: &'static str, lower: f64, upper: f64) -> Self {
        Self {
            name,
            unit,
            lower,
            upper,
        }
    }
}

/// A fully wired constrained optimization problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub sense: Sense,
    pub variables: Vec<Variable>,
    pub constraint_names: Vec<&'static str>,
    pub bounds_mode: BoundsMode,
    /// Default strategy bounds `(k1, k2)` for this problem, if tabulated.
    pub default_strategy_bounds: Option<(f64, f64)>,
    model: Arc<dyn Model>,
}

impl ProblemSpec {
    pub fn new(
        name: impl Into<String>,
        sense: Sense,
        variables: Vec<Variable>,
        constraint_names: Vec<&'static str>,
        model: Arc<dyn Model>,
    ) -> Result<Self, ConfigError> {
        for (index, v) in variables.iter().enumerate() {
            if !(v.lower.is_finite() && v.upper.is_finite() && v.lower < v.upper) {
                return Err(ConfigError::MalformedBounds {
                    index,
                    lower: v.lower,
                    upper: v.upper,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            sense,
            variables,
            constraint_names,
            bounds_mode: BoundsMode::AsWritten,
            default_strategy_bounds: None,
            model,
        })
    }

    /// Builds a problem from a closure; constraints are named `g1..gm`.
    pub fn from_fn<F>(
        name: impl Into<String>,
        sense: Sense,
        bounds: &[(f64, f64)],
        constraint_count: usize,
        f: F,
    ) -> Result<Self, ConfigError>
    where
        F: Fn(&[f64]) -> Result<Evaluation, EvalError> + Send + Sync + 'static,
    {
        const NAMES: [&str; 10] = ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9", "g10"];
        let variables = bounds
            .iter()
            .map(|&(lo, hi)| Variable::new("x", "", lo, hi))
            .collect();
        let names = (0..constraint_count).map(|i| NAMES[i.min(9)]).collect();
        Self::new(name, sense, variables, names, Arc::new(FnModel(f)))
    }

    pub fn with_strategy_bounds(mut self, k1: f64, k2: f64) -> Self {
        self.default_strategy_bounds = Some((k1, k2));
        self
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn constraint_count(&self) -> usize {
        self.constraint_names.len()
    }

    pub fn lower(&self) -> Vec<f64> {
        self.variables.iter().map(|v| v.lower).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.variables.iter().map(|v| v.upper).collect()
    }

    /// Evaluates `x` in native sense. Non-finite outputs become errors.
    pub fn evaluate(&self, x: &[f64]) -> Result<Evaluation, EvalError> {
        if x.len() != self.dimension() {
            return Err(EvalError::new(
                x,
                format!("expected {} variables, got {}", self.dimension(), x.len()),
            ));
        }
        let eval = self.model.evaluate(x)?;
        if !eval.objective.is_finite() {
            return Err(EvalError::new(x, "non-finite objective"));
        }
        if let Some(j) = eval.constraints.iter().position(|g| !g.is_finite()) {
            return Err(EvalError::new(x, format!("non-finite constraint {j}")));
        }
        debug_assert_eq!(eval.constraints.len(), self.constraint_count());
        Ok(eval)
    }

    pub fn check_dimension(&self, x: &[f64]) -> Result<(), ConfigError> {
        if x.len() == self.dimension() {
            Ok(())
        } else {
            Err(ConfigError::Dimension {
                expected: self.dimension(),
                got: x.len(),
            })
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(&self.variables)
                .all(|(&xi, v)| xi >= v.lower && xi <= v.upper)
    }
}
