//! Constraint-handling strategies: map constraint values to per-candidate
//! selection weights.
//!
//! * triangular: a survival probability peaked at `g = 0`, falling linearly to
//!   zero at `k1` and `k2`, with a small constant outside `[k1, k2]`;
//! * modulus: a penalty `|a g| + δ` inside `[k1, k2]` and `φ |a g|` outside;
//! * tanh: a saturating penalty `tanh(a |g|) + δ` with `a` chosen so the
//!   penalty reaches 0.999 at the bound on each side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, WeightError};

/// Floor for the product of triangular scores, which is zero exactly at a bound.
pub const TRIANGULAR_AGGREGATE_FLOOR: f64 = 1e-12;

/// The value the tanh penalty takes at the strategy bound.
pub const TANH_SATURATION: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Triangular,
    Modulus,
    Tanh,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] = [Self::Triangular, Self::Modulus, Self::Tanh];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Triangular => "triangular",
            Self::Modulus => "modulus",
            Self::Tanh => "tanh",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "triangular" => Ok(Self::Triangular),
            "modulus" => Ok(Self::Modulus),
            "tanh" => Ok(Self::Tanh),
            other => Err(format!(
                "unknown strategy `{other}` (valid: triangular, modulus, tanh)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub kind: StrategyKind,
    /// Lower constraint bound, `k1 < 0`.
    pub k1: f64,
    /// Upper constraint bound, `k2 > 0`.
    pub k2: f64,
    pub delta: f64,
    /// Static penalty outside `[k1, k2]` (modulus).
    pub phi: f64,
    /// Slope of the modulus penalty.
    pub a_mod: f64,
    /// Triangular score outside `[k1, k2]`.
    pub outside_prob: f64,
}

impl StrategyParams {
    pub fn new(kind: StrategyKind, k1: f64, k2: f64) -> Self {
        Self {
            kind,
            k1,
            k2,
            delta: 1e-6,
            phi: 1e3,
            a_mod: 1.0,
            outside_prob: 1e-4,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let check = |ok: bool, name, value, reason| {
            if ok {
                Ok(())
            } else {
                Err(ConfigError::Parameter {
                    name,
                    value,
                    reason,
                })
            }
        };
        check(self.k1 < 0.0, "k1", self.k1, "must be negative")?;
        check(self.k2 > 0.0, "k2", self.k2, "must be positive")?;
        check(self.delta > 0.0, "delta", self.delta, "must be positive")?;
        check(self.phi > 1.0, "phi", self.phi, "must exceed 1")?;
        check(self.a_mod > 0.0, "a_mod", self.a_mod, "must be positive")?;
        check(
            self.outside_prob > 0.0 && self.outside_prob < 0.1,
            "outside_prob",
            self.outside_prob,
            "must lie in (0, 0.1)",
        )
    }

    fn in_bounds(&self, g: f64) -> bool {
        g >= self.k1 && g <= self.k2
    }
}

/// Survival probability of one constraint value (larger is better).
pub fn triangular_score(g: f64, p: &StrategyParams) -> f64 {
    if !p.in_bounds(g) {
        p.outside_prob
    } else if g > 0.0 {
        1.0 - g / p.k2
    } else if g < 0.0 {
        1.0 - g / p.k1
    } else {
        1.0
    }
}

/// Penalty of one constraint value (smaller is better).
pub fn modulus_penalty(g: f64, p: &StrategyParams) -> f64 {
    let slope = (p.a_mod * g).abs();
    if p.in_bounds(g) {
        slope + p.delta
    } else {
        p.phi * slope
    }
}

/// `atanh(0.999) / k`, so that `tanh(a k) = 0.999`.
pub fn tanh_coefficient(k: f64) -> Result<f64, ConfigError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(ConfigError::Parameter {
            name: "k",
            value: k,
            reason: "tanh bound must be positive and finite",
        });
    }
    Ok(TANH_SATURATION.atanh() / k)
}

/// Penalty of one constraint value (smaller is better), with separate
/// slopes for the negative side (from `|k1|`) and positive side (from `k2`).
pub fn tanh_score(g: f64, p: &StrategyParams) -> f64 {
    let k = if g >= 0.0 { p.k2 } else { p.k1.abs() };
    let a = TANH_SATURATION.atanh() / k;
    (a * g.abs()).tanh() + p.delta
}

/// Combines the per-constraint scores of one candidate: a product of
/// probabilities (triangular) or a sum of penalties (modulus, tanh).
///
/// Unconstrained problems get the neutral value (1 or 0).
pub fn aggregate_constraints(gs: &[f64], p: &StrategyParams) -> f64 {
    match p.kind {
        StrategyKind::Triangular => gs
            .iter()
            .map(|&g| triangular_score(g, p))
            .product::<f64>()
            .max(TRIANGULAR_AGGREGATE_FLOOR),
        StrategyKind::Modulus => gs.iter().map(|&g| modulus_penalty(g, p)).sum(),
        StrategyKind::Tanh => gs.iter().map(|&g| tanh_score(g, p)).sum(),
    }
}

/// Weight given to the constraint term relative to the objective term in
/// the modulus and tanh weights.
pub const CONSTRAINT_EMPHASIS: f64 = 4.0;

/// Floor added to the normalized triangular aggregate so the candidate with
/// the lowest survival probability can still be followed.
pub const TRIANGULAR_SURVIVAL_FLOOR: f64 = 0.1;

/// Roulette weights for a cohort.
///
/// `objectives` are in minimization sense. Both inputs are first put on the
/// cohort's own scale, so neither the objective's units nor the penalty's
/// magnitude dominates:
///
/// * `f̂ = (f - min f) / (max f - min f) + 1`, in `[1, 2]` (all 1 if equal);
/// * `â = (A - min A) / (max A - min A)`, in `[0, 1]` (all 0 if equal).
///
/// Then
///
/// * triangular (`A` is a survival probability, larger is better):
///   `s = (TRIANGULAR_SURVIVAL_FLOOR + â) / f̂`;
/// * modulus: `s = 1 / (f̂ + E â)`;
/// * tanh: `s = 1 / (f̂ + W â)` with `W = E (max f̂ - min f̂ + 1)`;
///
/// where `E` is [`CONSTRAINT_EMPHASIS`], and the weights are `s / Σ s`.
pub fn selection_weights(
    objectives: &[f64],
    aggregates: &[f64],
    p: &StrategyParams,
) -> Result<Vec<f64>, WeightError> {
    if objectives.is_empty() {
        return Err(WeightError::Empty);
    }
    if objectives.len() != aggregates.len() {
        return Err(WeightError::Length {
            objectives: objectives.len(),
            aggregates: aggregates.len(),
        });
    }
    if let Some(i) = objectives
        .iter()
        .zip(aggregates)
        .position(|(f, a)| !f.is_finite() || !a.is_finite())
    {
        return Err(WeightError::NonFinite(i));
    }
    let f_hat: Vec<f64> = normalized(objectives).map(|f| f + 1.0).collect();
    let a_hat: Vec<f64> = normalized(aggregates).collect();
    let pairs = f_hat.iter().zip(&a_hat);
    let scores: Vec<f64> = match p.kind {
        StrategyKind::Triangular => pairs
            .map(|(f, a)| (TRIANGULAR_SURVIVAL_FLOOR + a) / f)
            .collect(),
        StrategyKind::Modulus => pairs
            .map(|(f, a)| 1.0 / (f + CONSTRAINT_EMPHASIS * a))
            .collect(),
        StrategyKind::Tanh => {
            let spread = f_hat.iter().copied().fold(1.0, f64::max) - 1.0;
            let w = CONSTRAINT_EMPHASIS * (spread + 1.0);
            pairs.map(|(f, a)| 1.0 / (f + w * a)).collect()
        }
    };
    let total: f64 = scores.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(WeightError::ZeroDenominator);
    }
    Ok(scores.into_iter().map(|s| s / total).collect())
}

/// Min-max scaling onto `[0, 1]`; a constant input maps to all zeros.
fn normalized(values: &[f64]) -> impl Iterator<Item = f64> + '_ {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    values
        .iter()
        .map(move |v| if range > 0.0 { (v - min) / range } else { 0.0 })
}
