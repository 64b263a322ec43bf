//! JSON solve report with a stable key layout per outcome class.

use serde::Serialize;
use unitsum_core::SolveOutcome;

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_cells: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<String>>,
    pub rank: usize,
    pub unknowns: usize,
}

impl SolveReport {
    pub fn from_outcome(outcome: &SolveOutcome) -> Self {
        Self {
            class: outcome.class.to_string(),
            solution: outcome
                .solution
                .as_ref()
                .map(|grid| grid.rows().map(|r| r.to_vec()).collect()),
            free_cells: outcome
                .free_cells
                .as_ref()
                .map(|cells| cells.iter().map(|c| [c.row(), c.col()]).collect()),
            violations: outcome
                .violations
                .as_ref()
                .map(|vs| vs.iter().map(|v| v.to_string()).collect()),
            rank: outcome.rank,
            unknowns: outcome.unknowns,
        }
    }
}
