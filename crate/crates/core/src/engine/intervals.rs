use crate::error::ConfigError;
use crate::problem::ProblemSpec;
use crate::rng::RngStream;

/// Per-variable search box of one candidate, nested inside the original bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingIntervals {
    lower: Vec<f64>,
    upper: Vec<f64>,
    original_lower: Vec<f64>,
    original_upper: Vec<f64>,
}

impl SamplingIntervals {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, ConfigError> {
        if lower.len() != upper.len() {
            return Err(ConfigError::Dimension {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(ConfigError::MalformedBounds {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self {
            original_lower: lower.clone(),
            original_upper: upper.clone(),
            lower,
            upper,
        })
    }

    /// Intervals spanning the full bounds of `problem`.
    pub fn from_problem(problem: &ProblemSpec) -> Result<Self, ConfigError> {
        Self::new(problem.lower(), problem.upper())
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn original_lower(&self) -> &[f64] {
        &self.original_lower
    }

    pub fn original_upper(&self) -> &[f64] {
        &self.original_upper
    }

    /// One independent uniform draw per variable from `[lower, upper)`.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform(lo, hi))
            .collect()
    }

    /// Intervals of width `reduction * width` centered on `center`, clipped
    /// to the original bounds.
    pub fn shrunk(&self, center: &[f64], reduction: f64) -> Self {
        debug_assert_eq!(center.len(), self.dimension());
        let mut lower = Vec::with_capacity(self.dimension());
        let mut upper = Vec::with_capacity(self.dimension());
        for (i, &c) in center.iter().enumerate() {
            let half = 0.5 * reduction * (self.upper[i] - self.lower[i]);
            let c = c.clamp(self.original_lower[i], self.original_upper[i]);
            lower.push((c - half).max(self.original_lower[i]));
            upper.push((c + half).min(self.original_upper[i]));
        }
        Self {
            lower,
            upper,
            original_lower: self.original_lower.clone(),
            original_upper: self.original_upper.clone(),
        }
    }

    /// Largest current width relative to the original width.
    pub fn max_relative_width(&self) -> f64 {
        (0..self.dimension())
            .map(|i| {
                (self.upper[i] - self.lower[i]) / (self.original_upper[i] - self.original_lower[i])
            })
            .fold(0.0, f64::max)
    }

    /// Whether every interval has stopped shrinking: its relative width is at
    /// most `threshold`, or it is so narrow relative to the magnitude of its
    /// endpoints that shrinking by `reduction` no longer changes the
    /// rounded endpoints (half-width below about `ulp / (1 - reduction)`).
    pub fn is_collapsed(&self, threshold: f64, reduction: f64) -> bool {
        (0..self.dimension()).all(|i| {
            let width = self.upper[i] - self.lower[i];
            if width <= threshold * (self.original_upper[i] - self.original_lower[i]) {
                return true;
            }
            let scale = self.lower[i].abs().max(self.upper[i].abs());
            reduction < 1.0 && width <= 4.0 * f64::EPSILON * scale / (1.0 - reduction)
        })
    }

    /// Whether the nesting invariants hold.
    pub fn is_nested(&self) -> bool {
        (0..self.dimension()).all(|i| {
            self.original_lower[i] <= self.lower[i]
                && self.lower[i] <= self.upper[i]
                && self.upper[i] <= self.original_upper[i]
        })
    }
}
