//! End-to-end linear solving, grid generation, and puzzle derivation.
//!
//! [`linear_solve`] runs the whole pipeline: build the unit-sum system,
//! append clue equations, reduce, and classify. A consistent full-rank
//! system still only certifies the *sums*, so the unique rational solution
//! passes a second check — every value integral, in `1..=n`, and the
//! resulting grid combinatorially valid — before the puzzle counts as
//! solved. Failing that second check is a distinct outcome
//! ([`SolveClass::UniqueInvalid`]), not an error: it is the concrete way a
//! sum-feasible assignment fails to be a real completion.

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::grid::{validate_complete, CellIndex, Grid, Puzzle, PuzzleSpec, Unit, Validity};
use crate::linalg::{ColumnLabel, Solution};
use crate::rng::SplitMix64;
use crate::system::{augment_with_clues, build_system, expected_rank, pivot_unknown_pattern};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("grid is not a valid completion ({} units violated)", violated.len())]
    InvalidGrid { violated: Vec<Unit> },
}

/// Classification of a linear solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveClass {
    /// Unique solution that passed the second check.
    UniqueValid,
    /// Unique rational solution that is not a valid grid.
    UniqueInvalid,
    /// Consistent but with free variables left.
    Underdetermined,
    /// The clue equations contradict the unit sums.
    Inconsistent,
}

impl fmt::Display for SolveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SolveClass::UniqueValid => "unique-valid",
            SolveClass::UniqueInvalid => "unique-invalid",
            SolveClass::Underdetermined => "underdetermined",
            SolveClass::Inconsistent => "inconsistent",
        };
        f.write_str(name)
    }
}

/// Why a unique rational solution failed the second check.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonIntegral { cell: CellIndex, value: Rational },
    OutOfRange { cell: CellIndex, value: Rational },
    DuplicateUnit { unit: Unit },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonIntegral { cell, value } => {
                write!(f, "cell {cell}: non-integral value {value}")
            }
            Violation::OutOfRange { cell, value } => {
                write!(f, "cell {cell}: value {value} out of range")
            }
            Violation::DuplicateUnit { unit } => write!(f, "{unit}: duplicate values"),
        }
    }
}

/// Full result of [`linear_solve`].
///
/// `rank` is the rank of the clue-augmented coefficient matrix and
/// `unknowns` the number of blank cells; the remaining fields are filled
/// according to `class`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub class: SolveClass,
    /// The solved grid, for [`SolveClass::UniqueValid`].
    pub solution: Option<Grid>,
    /// Raw rational assignment in flat-index order, for both unique classes.
    pub assignment: Option<Vec<Rational>>,
    /// Free (non-pivot) cells, for [`SolveClass::Underdetermined`].
    pub free_cells: Option<Vec<CellIndex>>,
    /// Second-check failures, for [`SolveClass::UniqueInvalid`].
    pub violations: Option<Vec<Violation>>,
    pub rank: usize,
    pub unknowns: usize,
}

impl SolveOutcome {
    fn bare(class: SolveClass, rank: usize, unknowns: usize) -> Self {
        Self {
            class,
            solution: None,
            assignment: None,
            free_cells: None,
            violations: None,
            rank,
            unknowns,
        }
    }
}

/// Solves `puzzle` through the linear model and classifies the outcome.
pub fn linear_solve(puzzle: &Puzzle) -> SolveOutcome {
    let spec = puzzle.spec();
    let unknowns = puzzle.blank_count();
    let system = build_system::<Rational>(spec);
    let augmented = augment_with_clues(&system, puzzle).expect("puzzle spec matches system spec");
    let report = augmented.rref();
    let rank = report.rank;

    if !report.consistent {
        return SolveOutcome::bare(SolveClass::Inconsistent, rank, unknowns);
    }
    match report.back_substitute().expect("system is consistent") {
        Solution::Underdetermined { free_cols } => {
            let n = spec.n();
            let free_cells = free_cols
                .iter()
                .map(|&c| match report.reduced.labels()[c] {
                    ColumnLabel::Cell(k) => CellIndex::from_flat(k, n).expect("label in range"),
                    ColumnLabel::Rhs => unreachable!("rhs column is never free"),
                })
                .collect();
            SolveOutcome {
                free_cells: Some(free_cells),
                ..SolveOutcome::bare(SolveClass::Underdetermined, rank, unknowns)
            }
        }
        Solution::Unique(x) => second_check(spec, x, rank, unknowns),
    }
}

/// The second check on a unique rational solution: integrality, then range,
/// then unit distinctness. All failures found are reported, not just the
/// first.
fn second_check(
    spec: &PuzzleSpec,
    assignment: Vec<Rational>,
    rank: usize,
    unknowns: usize,
) -> SolveOutcome {
    let n = spec.n();
    let mut violations = Vec::new();
    let mut values = Vec::with_capacity(assignment.len());
    for (idx, v) in assignment.iter().enumerate() {
        let cell = CellIndex::from_flat(idx + 1, n).expect("in range");
        if !v.is_integer() {
            violations.push(Violation::NonIntegral {
                cell,
                value: v.clone(),
            });
            continue;
        }
        match v.to_integer().to_u32() {
            Some(u) if u >= 1 && (u as usize) <= n => values.push(u),
            _ => violations.push(Violation::OutOfRange {
                cell,
                value: v.clone(),
            }),
        }
    }
    if !violations.is_empty() {
        return SolveOutcome {
            assignment: Some(assignment),
            violations: Some(violations),
            ..SolveOutcome::bare(SolveClass::UniqueInvalid, rank, unknowns)
        };
    }
    let grid = Grid::from_flat(spec.clone(), values).expect("values checked in range");
    match validate_complete(&grid) {
        Validity::Valid => SolveOutcome {
            solution: Some(grid),
            assignment: Some(assignment),
            ..SolveOutcome::bare(SolveClass::UniqueValid, rank, unknowns)
        },
        Validity::Invalid { violated } => {
            let violations = violated
                .into_iter()
                .map(|unit| Violation::DuplicateUnit { unit })
                .collect();
            SolveOutcome {
                assignment: Some(assignment),
                violations: Some(violations),
                ..SolveOutcome::bare(SolveClass::UniqueInvalid, rank, unknowns)
            }
        }
    }
}

/// Deterministically generates a valid completed grid for `spec`.
///
/// Seed 0 returns the base pattern unchanged: `((i+j-2) mod n) + 1` for
/// Latin squares and `((m*((i-1) mod l) + (i-1) div l + (j-1)) mod n) + 1`
/// for Sudokus. Any other seed drives validity-preserving moves from a
/// [`SplitMix64`] stream: a symbol relabeling, then full row and column
/// permutations for Latin squares, or band/stack permutations combined
/// with row permutations inside bands and column permutations inside
/// stacks for Sudokus. No rejection sampling is involved, so generation is
/// O(n^2) and the result is valid by construction.
pub fn generate_complete(spec: &PuzzleSpec, seed: u64) -> Grid {
    let n = spec.n();
    let mut symbols: Vec<u32> = (1..=n as u32).collect();
    let mut row_src: Vec<usize> = (0..n).collect();
    let mut col_src: Vec<usize> = (0..n).collect();
    if seed != 0 {
        let mut rng = SplitMix64::new(seed);
        rng.shuffle(&mut symbols);
        match spec.block_dims() {
            None => {
                rng.shuffle(&mut row_src);
                rng.shuffle(&mut col_src);
            }
            Some((l, m)) => {
                row_src = banded_permutation(&mut rng, n, l);
                col_src = banded_permutation(&mut rng, n, m);
            }
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for &src_row in &row_src {
        for &src_col in &col_src {
            let v = base_value(spec, src_row + 1, src_col + 1);
            cells.push(symbols[(v - 1) as usize]);
        }
    }
    let grid = Grid::from_flat(spec.clone(), cells).expect("base values in range");
    debug_assert!(validate_complete(&grid).is_valid());
    grid
}

fn base_value(spec: &PuzzleSpec, i: usize, j: usize) -> u32 {
    let n = spec.n();
    let v = match spec.block_dims() {
        None => (i + j - 2) % n,
        Some((l, m)) => (m * ((i - 1) % l) + (i - 1) / l + (j - 1)) % n,
    };
    (v + 1) as u32
}

/// Source-index permutation that maps whole bands of `width` consecutive
/// positions onto bands, shuffling the bands and the positions inside each.
fn banded_permutation(rng: &mut SplitMix64, n: usize, width: usize) -> Vec<usize> {
    let mut bands: Vec<usize> = (0..n / width).collect();
    rng.shuffle(&mut bands);
    let mut perm = Vec::with_capacity(n);
    for &band in &bands {
        let mut within: Vec<usize> = (0..width).collect();
        rng.shuffle(&mut within);
        perm.extend(within.iter().map(|w| band * width + w));
    }
    perm
}

/// Blanks exactly the pivot-pattern cells of a valid grid, producing the
/// puzzle with the most unknowns the linear system can still finish.
pub fn derive_max_linear_puzzle(grid: &Grid) -> Result<Puzzle, EngineError> {
    match validate_complete(grid) {
        Validity::Invalid { violated } => Err(EngineError::InvalidGrid { violated }),
        Validity::Valid => {
            let mut cells: Vec<Option<u32>> = grid.cells().iter().map(|&v| Some(v)).collect();
            for cell in pivot_unknown_pattern(grid.spec()) {
                cells[cell.flat() - 1] = None;
            }
            Ok(Puzzle::from_flat(grid.spec().clone(), cells).expect("values already validated"))
        }
    }
}

/// The necessary rank condition `k <= rank bound` for a puzzle with `k`
/// unknowns. Necessary only: a puzzle within the bound can still be
/// underdetermined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCondition {
    pub unknowns: usize,
    pub bound: usize,
    pub within_bound: bool,
}

pub fn classify_rank_condition(puzzle: &Puzzle) -> RankCondition {
    let unknowns = puzzle.blank_count();
    let bound = expected_rank(puzzle.spec());
    RankCondition {
        unknowns,
        bound,
        within_bound: unknowns <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::PuzzleKind;

    fn latin(n: usize) -> PuzzleSpec {
        PuzzleSpec::latin(n).unwrap()
    }

    fn sudoku(n: usize, l: usize, m: usize) -> PuzzleSpec {
        PuzzleSpec::sudoku(n, l, m).unwrap()
    }

    fn solved_4x4(spec: PuzzleSpec) -> Grid {
        Grid::from_rows(
            spec,
            &[
                vec![1, 4, 3, 2],
                vec![3, 2, 1, 4],
                vec![4, 3, 2, 1],
                vec![2, 1, 4, 3],
            ],
        )
        .unwrap()
    }

    /// The 9-clue order-4 puzzle whose unique completion is `solved_4x4`.
    fn nine_clue_puzzle(spec: PuzzleSpec) -> Puzzle {
        Puzzle::from_rows(
            spec,
            &[
                vec![Some(1), Some(4), None, Some(2)],
                vec![Some(3), None, Some(1), None],
                vec![None, Some(3), None, Some(1)],
                vec![None, None, Some(4), Some(3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn solves_the_nine_clue_sudoku() {
        let outcome = linear_solve(&nine_clue_puzzle(sudoku(4, 2, 2)));
        assert_eq!(outcome.class, SolveClass::UniqueValid);
        assert_eq!(outcome.unknowns, 7);
        let solution = outcome.solution.unwrap();
        assert_eq!(solution, solved_4x4(sudoku(4, 2, 2)));
    }

    #[test]
    fn all_clues_solve_to_the_input() {
        let grid = solved_4x4(latin(4));
        let outcome = linear_solve(&Puzzle::from_grid(&grid));
        assert_eq!(outcome.class, SolveClass::UniqueValid);
        assert_eq!(outcome.unknowns, 0);
        assert_eq!(outcome.rank, 16);
        assert_eq!(outcome.solution.unwrap(), grid);
    }

    #[test]
    fn swappable_rectangle_is_underdetermined() {
        // Blank a 2x2 rectangle holding {1,2} x {1,2}; two completions exist,
        // so the linear system must report free cells even though the
        // unknown count is within the rank bound.
        let spec = latin(4);
        let grid = Grid::from_rows(
            spec.clone(),
            &[
                vec![1, 2, 3, 4],
                vec![2, 1, 4, 3],
                vec![3, 4, 1, 2],
                vec![4, 3, 2, 1],
            ],
        )
        .unwrap();
        assert!(validate_complete(&grid).is_valid());
        let mut cells: Vec<Option<u32>> = grid.cells().iter().map(|&v| Some(v)).collect();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            cells[(i - 1) * 4 + (j - 1)] = None;
        }
        let puzzle = Puzzle::from_flat(spec, cells).unwrap();

        let condition = classify_rank_condition(&puzzle);
        assert_eq!(condition.unknowns, 4);
        assert_eq!(condition.bound, 7);
        assert!(condition.within_bound);

        let outcome = linear_solve(&puzzle);
        assert_eq!(outcome.class, SolveClass::Underdetermined);
        let free = outcome.free_cells.unwrap();
        assert!(!free.is_empty());
        assert!(free
            .iter()
            .all(|c| puzzle.value(c.row(), c.col()).is_none()));
    }

    #[test]
    fn out_of_range_solution_is_unique_invalid() {
        // Duplicated clues keep the sums consistent but push the forced
        // values to 4 and 0 in an order-3 square.
        let spec = latin(3);
        let puzzle = Puzzle::from_rows(
            spec,
            &[
                vec![Some(1), Some(1), None],
                vec![Some(2), Some(2), None],
                vec![None, None, None],
            ],
        )
        .unwrap();
        let outcome = linear_solve(&puzzle);
        assert_eq!(outcome.class, SolveClass::UniqueInvalid);
        let violations = outcome.violations.unwrap();
        assert!(violations.iter().any(
            |v| matches!(v, Violation::OutOfRange { cell, .. } if (cell.row(), cell.col()) == (1, 3))
        ));
        assert!(violations.iter().any(
            |v| matches!(v, Violation::OutOfRange { cell, .. } if (cell.row(), cell.col()) == (3, 3))
        ));
        assert!(outcome.assignment.is_some());
    }

    #[test]
    fn fractional_solution_is_unique_invalid() {
        // The sums admit exactly one rational solution here, but it assigns
        // halves to every blank cell.
        let spec = sudoku(4, 2, 2);
        let puzzle = Puzzle::from_rows(
            spec,
            &[
                vec![None, Some(4), Some(2), None],
                vec![Some(1), None, None, Some(3)],
                vec![None, Some(3), None, Some(4)],
                vec![Some(4), None, Some(4), None],
            ],
        )
        .unwrap();
        let outcome = linear_solve(&puzzle);
        assert_eq!(outcome.class, SolveClass::UniqueInvalid);
        let violations = outcome.violations.unwrap();
        assert_eq!(violations.len(), 8);
        assert!(violations
            .iter()
            .all(|v| matches!(v, Violation::NonIntegral { .. })));
        let assignment = outcome.assignment.unwrap();
        assert_eq!(assignment[0], Rational::new(5.into(), 2.into()));
    }

    #[test]
    fn sum_feasible_duplicates_are_unique_invalid() {
        // Eight clues of the all-2s order-3 grid: every unit sums to 6, the
        // system is consistent with full rank, yet the completion duplicates
        // values in every unit.
        let spec = latin(3);
        let mut cells = vec![Some(2); 9];
        cells[8] = None;
        let puzzle = Puzzle::from_flat(spec, cells).unwrap();
        let outcome = linear_solve(&puzzle);
        assert_eq!(outcome.class, SolveClass::UniqueInvalid);
        let violations = outcome.violations.unwrap();
        assert_eq!(violations.len(), 6);
        assert!(violations
            .iter()
            .all(|v| matches!(v, Violation::DuplicateUnit { .. })));
    }

    #[test]
    fn contradictory_clues_are_inconsistent() {
        // x1 = 1 and x4 = 2 force row 2 to sum to 4, not 3.
        let spec = latin(2);
        let puzzle = Puzzle::from_rows(spec, &[vec![Some(1), None], vec![None, Some(2)]]).unwrap();
        let outcome = linear_solve(&puzzle);
        assert_eq!(outcome.class, SolveClass::Inconsistent);
    }

    #[test]
    fn empty_puzzle_is_underdetermined() {
        for spec in [latin(2), latin(4), sudoku(4, 2, 2)] {
            let outcome = linear_solve(&Puzzle::empty(spec.clone()));
            assert_eq!(outcome.class, SolveClass::Underdetermined);
            assert_eq!(outcome.rank, expected_rank(&spec));
            let free = outcome.free_cells.unwrap();
            assert_eq!(free.len(), spec.cell_count() - expected_rank(&spec));
        }
    }

    #[test]
    fn base_patterns_match_known_values() {
        let g = generate_complete(&latin(3), 0);
        assert_eq!(
            g.rows().map(|r| r.to_vec()).collect::<Vec<_>>(),
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]
        );

        let g = generate_complete(&sudoku(4, 2, 2), 0);
        assert_eq!(
            g.rows().map(|r| r.to_vec()).collect::<Vec<_>>(),
            vec![
                vec![1, 2, 3, 4],
                vec![3, 4, 1, 2],
                vec![2, 3, 4, 1],
                vec![4, 1, 2, 3],
            ]
        );
    }

    #[test]
    fn generation_is_valid_and_deterministic() {
        for spec in [
            latin(1),
            latin(5),
            sudoku(4, 2, 2),
            sudoku(6, 3, 2),
            sudoku(9, 3, 3),
        ] {
            for seed in [0, 1, 2, 42, 0xdead_beef] {
                let a = generate_complete(&spec, seed);
                assert!(validate_complete(&a).is_valid(), "{spec} seed {seed}");
                assert_eq!(a, generate_complete(&spec, seed));
            }
        }
    }

    #[test]
    fn derive_blanks_the_pivot_pattern() {
        let grid = solved_4x4(latin(4));
        let puzzle = derive_max_linear_puzzle(&grid).unwrap();
        assert_eq!(puzzle.blank_count(), 7);
        for cell in pivot_unknown_pattern(grid.spec()) {
            assert_eq!(puzzle.value(cell.row(), cell.col()), None);
        }

        let one = Grid::from_rows(latin(1), &[vec![1]]).unwrap();
        let puzzle = derive_max_linear_puzzle(&one).unwrap();
        assert_eq!(puzzle.blank_count(), 1);

        let bad = Grid::from_rows(latin(2), &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            derive_max_linear_puzzle(&bad),
            Err(EngineError::InvalidGrid { .. })
        ));
    }

    #[test]
    fn rank_condition_on_known_puzzles() {
        let grid = solved_4x4(latin(4));
        let max_linear = derive_max_linear_puzzle(&grid).unwrap();
        let c = classify_rank_condition(&max_linear);
        assert_eq!((c.unknowns, c.bound, c.within_bound), (7, 7, true));

        let full = Puzzle::from_grid(&grid);
        let c = classify_rank_condition(&full);
        assert_eq!((c.unknowns, c.within_bound), (0, true));
    }

    #[test]
    fn round_trip_solves_back_to_the_generator_grid() {
        for spec in [latin(4), latin(6), sudoku(4, 2, 2), sudoku(6, 2, 3)] {
            for seed in 0..5 {
                let grid = generate_complete(&spec, seed);
                let puzzle = derive_max_linear_puzzle(&grid).unwrap();
                let outcome = linear_solve(&puzzle);
                assert_eq!(outcome.class, SolveClass::UniqueValid, "{spec} seed {seed}");
                assert_eq!(outcome.solution.unwrap(), grid);
            }
        }
    }

    #[test]
    fn latin_kind_is_plain() {
        assert_eq!(latin(4).kind(), PuzzleKind::Latin);
        assert_eq!(sudoku(4, 2, 2).kind(), PuzzleKind::Sudoku);
    }
}
