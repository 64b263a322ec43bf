//! Cross-module checks: the linear classifier against the exhaustive
//! oracle on desk-scale boards.

use unitsum_core::rng::SplitMix64;
use unitsum_core::{
    agrees_with_linear, classify_rank_condition, count_completions, derive_max_linear_puzzle,
    generate_complete, linear_solve, Puzzle, PuzzleSpec, SolveClass,
};

fn desk_specs() -> Vec<PuzzleSpec> {
    vec![
        PuzzleSpec::latin(3).unwrap(),
        PuzzleSpec::latin(4).unwrap(),
        PuzzleSpec::latin(5).unwrap(),
        PuzzleSpec::latin(6).unwrap(),
        PuzzleSpec::sudoku(4, 2, 2).unwrap(),
        PuzzleSpec::sudoku(6, 2, 3).unwrap(),
        PuzzleSpec::sudoku(6, 3, 2).unwrap(),
    ]
}

/// Whatever the linear solve claims must survive the count: unique-valid
/// needs exactly one completion (the same grid), inconsistent needs zero.
#[test]
fn linear_claims_survive_the_oracle() {
    let mut rng = SplitMix64::new(2024);
    let mut seen = [0usize; 4];
    for spec in desk_specs() {
        for round in 0..12 {
            let grid = generate_complete(&spec, rng.next_u64());
            let mut cells: Vec<Option<u32>> = grid.cells().iter().map(|&v| Some(v)).collect();
            let blanks = round % (spec.n() + 4);
            for _ in 0..blanks {
                let idx = rng.next_below(cells.len());
                cells[idx] = None;
            }
            // Occasionally corrupt a clue to reach the failure classes.
            if round % 3 == 0 {
                let idx = rng.next_below(cells.len());
                if cells[idx].is_some() {
                    cells[idx] = Some(1 + rng.next_below(spec.n()) as u32);
                }
            }
            let puzzle = Puzzle::from_flat(spec.clone(), cells).unwrap();
            let report = agrees_with_linear(&puzzle);
            assert!(
                report.agrees,
                "disagreement on {spec}: {:?} vs count {}",
                report.outcome.class, report.oracle.count
            );
            seen[match report.outcome.class {
                SolveClass::UniqueValid => 0,
                SolveClass::UniqueInvalid => 1,
                SolveClass::Underdetermined => 2,
                SolveClass::Inconsistent => 3,
            }] += 1;
        }
    }
    // The sweep must actually exercise solved and unsolved classes.
    assert!(
        seen[0] > 0 && seen[2] > 0,
        "class coverage too thin: {seen:?}"
    );
}

/// Order n >= 2 Latin squares with 3 unknowns always solve uniquely.
#[test]
fn three_unknowns_always_solve() {
    let mut rng = SplitMix64::new(7);
    for n in [3usize, 4, 5] {
        let spec = PuzzleSpec::latin(n).unwrap();
        for _ in 0..3 {
            let grid = generate_complete(&spec, rng.next_u64());
            for _ in 0..15 {
                let mut cells: Vec<Option<u32>> = grid.cells().iter().map(|&v| Some(v)).collect();
                while cells.iter().filter(|c| c.is_none()).count() < 3 {
                    let idx = rng.next_below(cells.len());
                    cells[idx] = None;
                }
                let puzzle = Puzzle::from_flat(spec.clone(), cells).unwrap();
                let outcome = linear_solve(&puzzle);
                assert_eq!(outcome.class, SolveClass::UniqueValid, "n = {n}");
                assert_eq!(outcome.solution.as_ref(), Some(&grid));
                let oracle = count_completions(&puzzle, 2);
                assert_eq!(oracle.count, 1);
            }
        }
    }
}

/// Four unknowns in two rows, two columns and two blocks of a Sudoku can
/// satisfy the rank bound and still leave two completions.
#[test]
fn rank_condition_is_not_sufficient() {
    let spec = PuzzleSpec::sudoku(4, 2, 2).unwrap();
    let grid = generate_complete(&spec, 0);
    // Cells (1,1), (1,3), (2,1), (2,3) hold the swappable values 1/3, 3/1.
    let mut cells: Vec<Option<u32>> = grid.cells().iter().map(|&v| Some(v)).collect();
    for (i, j) in [(1, 1), (1, 3), (2, 1), (2, 3)] {
        cells[(i - 1) * 4 + (j - 1)] = None;
    }
    let puzzle = Puzzle::from_flat(spec, cells).unwrap();

    let condition = classify_rank_condition(&puzzle);
    assert_eq!(condition.unknowns, 4);
    assert_eq!(condition.bound, 8);
    assert!(condition.within_bound);

    let outcome = linear_solve(&puzzle);
    assert_eq!(outcome.class, SolveClass::Underdetermined);

    let oracle = count_completions(&puzzle, 10);
    assert_eq!(oracle.count, 2);
    assert_eq!(oracle.solutions.len(), 2);
    assert_ne!(oracle.solutions[0], oracle.solutions[1]);
}

/// Pivot-pattern puzzles solve back to their generating grid, and the
/// oracle confirms uniqueness at desk scale.
#[test]
fn max_linear_puzzles_round_trip_with_unique_completions() {
    let mut rng = SplitMix64::new(99);
    for spec in desk_specs() {
        for _ in 0..5 {
            let grid = generate_complete(&spec, rng.next_u64());
            let puzzle = derive_max_linear_puzzle(&grid).unwrap();
            let outcome = linear_solve(&puzzle);
            assert_eq!(outcome.class, SolveClass::UniqueValid, "{spec}");
            assert_eq!(outcome.solution.as_ref(), Some(&grid));
            let oracle = count_completions(&puzzle, 2);
            assert_eq!(oracle.count, 1, "{spec}");
        }
    }
}
