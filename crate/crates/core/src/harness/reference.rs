//! Published reference values, read from a JSON data file.
//!
//! The file shipped in `data/reference_values.json` is compiled in; another
//! file with the same schema can be loaded with [`ReferenceTable::from_json`].

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::strategy::StrategyKind;

const BUILTIN: &str = include_str!("../../data/reference_values.json");

/// One reported result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    /// Source table number.
    pub table: u32,
    pub problem: String,
    /// CI strategy name, `global` for a known optimum, or the name of a
    /// comparison algorithm.
    pub algorithm: String,
    /// Reported best objective, native sense.
    pub value: f64,
    /// Constraint values as printed, if reported.
    pub constraints: Option<Vec<f64>>,
    pub sd: Option<f64>,
    pub iterations: Option<u64>,
}

impl ReferenceRow {
    pub fn citation(&self) -> String {
        format!("Table {}", self.table)
    }

    pub fn strategy(&self) -> Option<StrategyKind> {
        self.algorithm.parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub version: u32,
    pub rows: Vec<ReferenceRow>,
}

impl ReferenceTable {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("shipped reference data parses")
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rows of one table, in file order.
    pub fn table(&self, table: u32) -> impl Iterator<Item = &ReferenceRow> {
        self.rows.iter().filter(move |r| r.table == table)
    }

    /// The CI row for `(problem, strategy)` in `table`.
    pub fn ci_value(
        &self,
        table: u32,
        problem: &str,
        strategy: StrategyKind,
    ) -> Option<&ReferenceRow> {
        self.table(table)
            .find(|r| r.problem == problem && r.strategy() == Some(strategy))
    }
}
