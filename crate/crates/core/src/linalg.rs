//! Dense augmented matrices and exact Gaussian elimination.
//!
//! Everything here is generic over the scalar type: any [`Scalar`] (a
//! `num_traits::Num` that clones) supports elimination, rank and residuals.
//! Puzzle code instantiates with the crate's exact [`crate::Rational`] so
//! that pivot and rank decisions are never subject to rounding; the matrices
//! involved are at most `3n + n^2` by `n^2 + 1`, so a dense representation
//! is both simple and fast enough.
//!
//! Elimination is deterministic: the pivot for each column is the first
//! row (top to bottom) with a nonzero entry, brought into place by a row
//! swap. Identical inputs always reduce to identical outputs.

use std::fmt;

use num_traits::Num;
use thiserror::Error;

/// Scalar type usable in elimination: exact rationals, floats, or any other
/// field-like `Num`.
pub trait Scalar: Num + Clone {}

impl<T: Num + Clone> Scalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector length {got} does not match coefficient column count {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("back-substitution called on an inconsistent system")]
    InconsistentSystem,
    #[error("matrix must have exactly one right-hand-side column")]
    BadRhsMarker,
    #[error("row lengths do not match the label count")]
    RaggedRows,
}

/// What a matrix column stands for: a cell variable (by 1-based flat index)
/// or the augmented right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnLabel {
    Cell(usize),
    Rhs,
}

/// A dense augmented matrix `(B | c)` with labeled columns.
///
/// Exactly one column is marked [`ColumnLabel::Rhs`]; rank and pivots are
/// computed over the remaining coefficient columns only, while row
/// operations always carry the right-hand side along.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    labels: Vec<ColumnLabel>,
}

impl<T: Scalar> ExactMatrix<T> {
    /// Zero matrix with `coeff_cols` coefficient columns labeled by flat
    /// indices `1..=coeff_cols` and a trailing right-hand-side column.
    pub fn zeros(rows: usize, coeff_cols: usize) -> Self {
        let mut labels: Vec<ColumnLabel> = (1..=coeff_cols).map(ColumnLabel::Cell).collect();
        labels.push(ColumnLabel::Rhs);
        Self {
            rows,
            cols: coeff_cols + 1,
            entries: vec![T::zero(); rows * (coeff_cols + 1)],
            labels,
        }
    }

    /// Builds a matrix from rows, last column taken as the right-hand side.
    pub fn augmented_from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(1);
        if cols == 0 {
            return Err(LinalgError::BadRhsMarker);
        }
        let mut labels: Vec<ColumnLabel> = (1..cols).map(ColumnLabel::Cell).collect();
        labels.push(ColumnLabel::Rhs);
        Self::from_rows_with_labels(labels, rows)
    }

    /// Builds a matrix from rows and explicit column labels.
    pub fn from_rows_with_labels(
        labels: Vec<ColumnLabel>,
        rows: Vec<Vec<T>>,
    ) -> Result<Self, LinalgError> {
        if labels.iter().filter(|l| **l == ColumnLabel::Rhs).count() != 1 {
            return Err(LinalgError::BadRhsMarker);
        }
        let cols = labels.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        let n_rows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
            labels,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Coefficient column count (all columns except the right-hand side).
    pub fn coeff_cols(&self) -> usize {
        self.cols - 1
    }

    pub fn labels(&self) -> &[ColumnLabel] {
        &self.labels
    }

    /// Position of the right-hand-side column.
    pub fn rhs_col(&self) -> usize {
        self.labels
            .iter()
            .position(|l| *l == ColumnLabel::Rhs)
            .expect("exactly one rhs column")
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends a row; length must match the column count.
    pub fn push_row(&mut self, row: Vec<T>) -> Result<(), LinalgError> {
        if row.len() != self.cols {
            return Err(LinalgError::RaggedRows);
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces a copy of the matrix to reduced row echelon form.
    ///
    /// Pivots are 1 and are the only nonzero entries of their columns;
    /// pivot columns move strictly right going down; rows whose
    /// coefficients vanish end up at the bottom. The right-hand-side
    /// column is carried along by every row operation but never hosts a
    /// pivot, and rank counts coefficient columns only.
    pub fn rref(&self) -> RrefReport<T> {
        let mut red = self.clone();
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;
        for col in 0..red.cols {
            if red.labels[col] == ColumnLabel::Rhs {
                continue;
            }
            if next_row == red.rows {
                break;
            }
            let Some(src) = (next_row..red.rows).find(|&r| !red.at(r, col).is_zero()) else {
                continue;
            };
            red.swap_rows(next_row, src);
            let pivot = red.at(next_row, col).clone();
            if !pivot.is_one() {
                for c in 0..red.cols {
                    if !red.at(next_row, c).is_zero() {
                        let v = red.at(next_row, c).clone() / pivot.clone();
                        red.set(next_row, c, v);
                    }
                }
            }
            for r in 0..red.rows {
                if r == next_row {
                    continue;
                }
                let factor = red.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..red.cols {
                    let p = red.at(next_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let v = red.at(r, c).clone() - factor.clone() * p.clone();
                    red.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            next_row += 1;
        }
        let rhs = red.rhs_col();
        let consistent = (0..red.rows).all(|r| {
            (0..red.cols).any(|c| c != rhs && !red.at(r, c).is_zero()) || red.at(r, rhs).is_zero()
        });
        RrefReport {
            rank: pivot_cols.len(),
            pivot_cols,
            consistent,
            reduced: red,
        }
    }

    /// Rank of the coefficient block.
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Exact residual `B x - c` for a candidate assignment `x` ordered by
    /// coefficient column position.
    pub fn residual(&self, x: &[T]) -> Result<Vec<T>, LinalgError> {
        if x.len() != self.coeff_cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.coeff_cols(),
                got: x.len(),
            });
        }
        let rhs = self.rhs_col();
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = T::zero();
            let mut xi = 0;
            for c in 0..self.cols {
                if c == rhs {
                    continue;
                }
                let b = self.at(r, c);
                if !b.is_zero() {
                    acc = acc + b.clone() * x[xi].clone();
                }
                xi += 1;
            }
            out.push(acc - self.at(r, rhs).clone());
        }
        Ok(out)
    }
}

impl<T: Scalar + fmt::Display> ExactMatrix<T> {
    /// Text dump: one row per line, entries separated by single spaces,
    /// the right-hand side set off by ` | `. Rational entries render as
    /// `p/q`, or as a bare integer when the denominator is 1.
    pub fn dump(&self) -> String {
        let rhs = self.rhs_col();
        let mut out = String::new();
        for r in 0..self.rows {
            let mut first = true;
            for c in 0..self.cols {
                if c == rhs {
                    continue;
                }
                if !first {
                    out.push(' ');
                }
                out.push_str(&self.at(r, c).to_string());
                first = false;
            }
            out.push_str(" | ");
            out.push_str(&self.at(r, rhs).to_string());
            out.push('\n');
        }
        out
    }
}

/// Outcome of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefReport<T> {
    /// Number of pivots, i.e. the rank of the coefficient block.
    pub rank: usize,
    /// Pivot column positions, strictly increasing.
    pub pivot_cols: Vec<usize>,
    /// False iff some reduced row has zero coefficients but a nonzero
    /// right-hand side.
    pub consistent: bool,
    pub reduced: ExactMatrix<T>,
}

/// Result of back-substitution on a consistent reduced system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<T> {
    /// Every coefficient column is a pivot: the unique solution, ordered by
    /// coefficient column position.
    Unique(Vec<T>),
    /// Free columns remain; their positions are listed in increasing order.
    Underdetermined { free_cols: Vec<usize> },
}

impl<T: Scalar> RrefReport<T> {
    /// Labels of the pivot columns, in pivot order.
    pub fn pivot_labels(&self) -> Vec<ColumnLabel> {
        self.pivot_cols
            .iter()
            .map(|&c| self.reduced.labels()[c])
            .collect()
    }

    /// Reads the solution off the reduced form.
    ///
    /// In reduced row echelon form each pivot variable equals the
    /// right-hand side of its pivot row once the free variables are fixed,
    /// so a fully pivoted system solves by a single backward pass.
    pub fn back_substitute(&self) -> Result<Solution<T>, LinalgError> {
        if !self.consistent {
            return Err(LinalgError::InconsistentSystem);
        }
        let rhs = self.reduced.rhs_col();
        let free_cols: Vec<usize> = (0..self.reduced.cols())
            .filter(|&c| c != rhs && !self.pivot_cols.contains(&c))
            .collect();
        if !free_cols.is_empty() {
            return Ok(Solution::Underdetermined { free_cols });
        }
        let mut x = vec![T::zero(); self.reduced.coeff_cols()];
        for (row, &col) in self.pivot_cols.iter().enumerate() {
            // Coefficient position of `col`: columns left of the rhs keep
            // their index, columns right of it shift down by one.
            let pos = if col < rhs { col } else { col - 1 };
            x[pos] = self.reduced.at(row, rhs).clone();
        }
        Ok(Solution::Unique(x))
    }
}
