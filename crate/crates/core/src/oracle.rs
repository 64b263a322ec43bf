//! Brute-force completion counting, the ground truth for everything else.
//!
//! Plain backtracking over the blank cells in flat-index order with
//! candidate values tried in ascending order, pruning only on duplicate
//! values within a unit. Deliberately free of any linear-algebra machinery
//! so it can independently confirm or refute what [`crate::linear_solve`]
//! claims. Intended for desk-scale boards: full enumeration is practical
//! for n <= 6 and for larger orders once a reasonable number of clues is
//! present.

use crate::engine::{linear_solve, SolveClass, SolveOutcome};
use crate::grid::{partial_consistent, units_of, Grid, Puzzle};

/// How many completions to keep as grids; two is enough to exhibit
/// non-uniqueness.
pub const SOLUTION_RETENTION: usize = 2;

/// Count of valid completions of a puzzle, possibly truncated at a cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Number of completions found; equals the cap when `capped`.
    pub count: u64,
    /// True iff enumeration stopped at the cap.
    pub capped: bool,
    /// The first completions found, at most [`SOLUTION_RETENTION`].
    pub solutions: Vec<Grid>,
}

/// Exhaustively counts the valid completions of `puzzle`, stopping once
/// `cap` completions have been found.
///
/// A puzzle that already duplicates a value within a unit has no
/// completions and returns count 0 immediately.
pub fn count_completions(puzzle: &Puzzle, cap: u64) -> OracleResult {
    if cap == 0 || !partial_consistent(puzzle) {
        return OracleResult {
            count: 0,
            capped: cap == 0,
            solutions: Vec::new(),
        };
    }
    let spec = puzzle.spec();
    let n = spec.n();
    let units = units_of(spec);
    // units_of_cell[k-1] lists the unit ids containing flat cell k.
    let mut units_of_cell: Vec<Vec<usize>> = vec![Vec::with_capacity(3); spec.cell_count()];
    for (id, unit) in units.iter().enumerate() {
        for cell in &unit.members {
            units_of_cell[cell.flat() - 1].push(id);
        }
    }
    let mut used = vec![vec![false; n + 1]; units.len()];
    let mut cells: Vec<u32> = Vec::with_capacity(spec.cell_count());
    let mut blanks = Vec::new();
    for (idx, cell) in puzzle.cells().iter().enumerate() {
        match cell {
            Some(v) => {
                cells.push(*v);
                for &u in &units_of_cell[idx] {
                    used[u][*v as usize] = true;
                }
            }
            None => {
                cells.push(0);
                blanks.push(idx);
            }
        }
    }
    let mut search = Search {
        n,
        cap,
        units_of_cell: &units_of_cell,
        used: &mut used,
        cells: &mut cells,
        blanks: &blanks,
        count: 0,
        solutions: Vec::new(),
        spec,
    };
    search.run(0);
    let capped = search.count == cap;
    OracleResult {
        count: search.count,
        capped,
        solutions: search.solutions,
    }
}

struct Search<'a> {
    n: usize,
    cap: u64,
    units_of_cell: &'a [Vec<usize>],
    used: &'a mut Vec<Vec<bool>>,
    cells: &'a mut Vec<u32>,
    blanks: &'a [usize],
    count: u64,
    solutions: Vec<Grid>,
    spec: &'a crate::grid::PuzzleSpec,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.blanks.len() {
            self.count += 1;
            if self.solutions.len() < SOLUTION_RETENTION {
                let grid = Grid::from_flat(self.spec.clone(), self.cells.clone())
                    .expect("search fills values in range");
                self.solutions.push(grid);
            }
            return;
        }
        let idx = self.blanks[depth];
        for v in 1..=self.n as u32 {
            if self.units_of_cell[idx]
                .iter()
                .any(|&u| self.used[u][v as usize])
            {
                continue;
            }
            for &u in &self.units_of_cell[idx] {
                self.used[u][v as usize] = true;
            }
            self.cells[idx] = v;
            self.run(depth + 1);
            self.cells[idx] = 0;
            for &u in &self.units_of_cell[idx] {
                self.used[u][v as usize] = false;
            }
            if self.count == self.cap {
                return;
            }
        }
    }
}

/// Cross-check of the linear solver against exhaustive enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub outcome: SolveOutcome,
    pub oracle: OracleResult,
    /// False only when the linear claim is contradicted by the count:
    /// a unique-valid claim without exactly that one completion, or an
    /// inconsistency claim despite existing completions.
    pub agrees: bool,
}

/// Runs [`linear_solve`] and [`count_completions`] (cap 2) on the same
/// puzzle and compares their claims.
///
/// Underdetermined and unique-invalid outcomes make no statement about the
/// true count, so any count is compatible; the pair is still recorded for
/// reporting.
pub fn agrees_with_linear(puzzle: &Puzzle) -> AgreementReport {
    let outcome = linear_solve(puzzle);
    let oracle = count_completions(puzzle, 2);
    let agrees = match outcome.class {
        SolveClass::UniqueValid => {
            oracle.count == 1 && oracle.solutions.first() == outcome.solution.as_ref()
        }
        SolveClass::Inconsistent => oracle.count == 0,
        SolveClass::Underdetermined | SolveClass::UniqueInvalid => true,
    };
    AgreementReport {
        outcome,
        oracle,
        agrees,
    }
}
