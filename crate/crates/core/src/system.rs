//! Construction of unit-sum linear systems and their closed-form ranks.
//!
//! For a spec of order `n` the system has one equation per unit — columns
//! first, then rows, then blocks — each summing its unit's cells to
//! `s = n(n+1)/2`. All coefficients are 0 or 1 and the right-hand side is
//! the constant `s`. Clue equations (`x_k = v`) are appended, never
//! substituted, so one built system serves any number of puzzles.

use num_traits::FromPrimitive;

use crate::grid::{units_of, CellIndex, GridError, Puzzle, PuzzleSpec, Unit};
use crate::linalg::{ExactMatrix, Scalar};

/// The common unit sum `s = n(n+1)/2`.
pub fn unit_sum(n: usize) -> u64 {
    let n = n as u64;
    n * (n + 1) / 2
}

/// A unit-sum system together with the units labeling its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSystem<T> {
    spec: PuzzleSpec,
    matrix: ExactMatrix<T>,
    row_labels: Vec<Unit>,
}

impl<T> UnitSystem<T> {
    pub fn spec(&self) -> &PuzzleSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &ExactMatrix<T> {
        &self.matrix
    }

    /// Unit labeling row `r` (0-based).
    pub fn row_labels(&self) -> &[Unit] {
        &self.row_labels
    }
}

/// Builds the unit-sum system for `spec`: `2n` rows for Latin squares,
/// `3n` for Sudokus, over `n^2` cell columns plus the right-hand side.
pub fn build_system<T: Scalar + FromPrimitive>(spec: &PuzzleSpec) -> UnitSystem<T> {
    let units = units_of(spec);
    let n2 = spec.cell_count();
    let s = T::from_u64(unit_sum(spec.n())).expect("unit sum representable");
    let mut matrix = ExactMatrix::zeros(units.len(), n2);
    let rhs = matrix.rhs_col();
    for (r, unit) in units.iter().enumerate() {
        for cell in &unit.members {
            matrix.set(r, cell.flat() - 1, T::one());
        }
        matrix.set(r, rhs, s.clone());
    }
    UnitSystem {
        spec: spec.clone(),
        matrix,
        row_labels: units,
    }
}

/// Closed-form rank of the unit-sum system: `2n - 1` for Latin squares,
/// `2n - 1 + (l-1)(m-1)` for Sudokus.
pub fn expected_rank(spec: &PuzzleSpec) -> usize {
    let n = spec.n();
    match spec.block_dims() {
        None => 2 * n - 1,
        Some((l, m)) => 2 * n - 1 + (l - 1) * (m - 1),
    }
}

/// Cells whose columns are the pivots of the reduced system, in flat-index
/// order: all of row 1, the rest of column 1, and for Sudokus the top-left
/// cell of every block that touches neither row 1 nor column 1.
///
/// Blanking exactly these cells of a valid grid produces a puzzle the
/// linear system alone can finish; the set's size equals [`expected_rank`].
pub fn pivot_unknown_pattern(spec: &PuzzleSpec) -> Vec<CellIndex> {
    let n = spec.n();
    let mut cells = Vec::new();
    for j in 1..=n {
        cells.push(CellIndex::new(1, j, n).expect("in range"));
    }
    for i in 2..=n {
        cells.push(CellIndex::new(i, 1, n).expect("in range"));
    }
    if let Some((l, m)) = spec.block_dims() {
        // Block grid: m block-rows of l rows, l block-columns of m columns.
        for block_row in 2..=m {
            for block_col in 2..=l {
                let i = (block_row - 1) * l + 1;
                let j = (block_col - 1) * m + 1;
                cells.push(CellIndex::new(i, j, n).expect("in range"));
            }
        }
    }
    cells.sort();
    cells
}

/// Appends one clue equation `x_k = v` per known cell of `puzzle`, in
/// flat-index order, after the unit rows.
pub fn augment_with_clues<T: Scalar + FromPrimitive>(
    system: &UnitSystem<T>,
    puzzle: &Puzzle,
) -> Result<ExactMatrix<T>, GridError> {
    if system.spec() != puzzle.spec() {
        return Err(GridError::SpecMismatch(
            Box::new(system.spec().clone()),
            Box::new(puzzle.spec().clone()),
        ));
    }
    let mut matrix = system.matrix().clone();
    let cols = matrix.cols();
    let rhs = matrix.rhs_col();
    for (cell, value) in puzzle.clues() {
        let mut row = vec![T::zero(); cols];
        row[cell.flat() - 1] = T::one();
        row[rhs] = T::from_u32(value).expect("clue representable");
        matrix.push_row(row).expect("row length matches");
    }
    Ok(matrix)
}
