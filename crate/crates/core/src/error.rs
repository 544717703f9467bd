use thiserror::Error;

/// Invalid problem, strategy or cohort configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("variable {index}: lower bound {lower} must be finite and below upper bound {upper}")]
    MalformedBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },
    #[error("unknown problem `{name}` (valid: {valid})")]
    UnknownProblem { name: String, valid: String },
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

/// A model produced a non-finite value or hit a domain error.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("evaluation failed at {x:?}: {reason}")]
pub struct EvalError {
    pub x: Vec<f64>,
    pub reason: String,
}

impl EvalError {
    pub fn new(x: &[f64], reason: impl Into<String>) -> Self {
        Self {
            x: x.to_vec(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SelectionError {
    #[error("empty weight list")]
    Empty,
    #[error("weight {index} is negative or not finite: {value}")]
    InvalidWeight { index: usize, value: f64 },
    #[error("weights sum to zero")]
    ZeroMass,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("empty cohort")]
    Empty,
    #[error("{objectives} objectives but {aggregates} constraint aggregates")]
    Length {
        objectives: usize,
        aggregates: usize,
    },
    #[error("non-finite input at candidate {0}")]
    NonFinite(usize),
    #[error("zero denominator while normalizing weights")]
    ZeroDenominator,
}

/// Failure of a single optimization run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("attempt {attempt}: {source}")]
    Selection {
        attempt: usize,
        source: SelectionError,
    },
    #[error("attempt {attempt}: {source}")]
    Weights { attempt: usize, source: WeightError },
    #[error("no candidate evaluated successfully in {attempts} attempts")]
    NoValidEvaluation { attempts: usize },
}

/// Failure of an experiment-harness operation.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("no run results to summarize")]
    NoResults,
    #[error("oracle budget {0} is below the minimum of {min}", min = crate::harness::MIN_ORACLE_BUDGET)]
    OracleBudget(usize),
    #[error("no reproducible table {0} (valid: 6 to 15)")]
    UnknownTable(u32),
    #[error("reference data: {0}")]
    Reference(#[from] serde_json::Error),
}
