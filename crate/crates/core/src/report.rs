//! Per-run benchmark records.

use crate::refine::refinement_percent;

/// Column names of a report row, in order.
pub const REPORT_COLUMNS: [&str; 9] = [
    "test_case",
    "probes",
    "lower_bound",
    "init_cost",
    "algo",
    "final_cost",
    "time_sec",
    "refined_percent",
    "seed",
];

/// One solver run: which algorithm, on what, and how far it got.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub test_case: String,
    pub probes: usize,
    pub lower_bound: Option<u64>,
    pub init_cost: u64,
    pub algorithm: String,
    pub final_cost: u64,
    /// `None` when timing is suppressed for reproducible output.
    pub wall_time_seconds: Option<f64>,
    pub seed: u64,
}

impl SolveReport {
    pub fn refined_percent(&self) -> f64 {
        refinement_percent(self.init_cost, self.final_cost)
    }

    /// The row as text fields; skipped values are written as `-`.
    pub fn record(&self) -> [String; 9] {
        [
            self.test_case.clone(),
            self.probes.to_string(),
            self.lower_bound.map_or_else(|| "-".to_string(), |b| b.to_string()),
            self.init_cost.to_string(),
            self.algorithm.clone(),
            self.final_cost.to_string(),
            self.wall_time_seconds
                .map_or_else(|| "-".to_string(), |t| format!("{t:.2}")),
            format!("{:.2}", self.refined_percent()),
            self.seed.to_string(),
        ]
    }
}
