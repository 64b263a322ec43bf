//! Latin squares and Sudokus as exact linear systems of unit-sum equations.
//!
//! Every row, column and (for Sudokus) block of a completed board contains
//! each of the symbols `1..=n` exactly once, so its entries sum to
//! `s = n(n+1)/2`. Collecting one sum equation per unit yields a 0/1 linear
//! system that every completed board satisfies. This crate builds those
//! systems, reduces them to reduced row echelon form over exact rationals,
//! reads off ranks and pivot patterns, solves clue-augmented puzzles by
//! back-substitution, and cross-checks everything against a brute-force
//! completion oracle.
//!
//! The linear model is a necessary condition, not a sufficient one: a
//! consistent full-rank system can still back-substitute to values that are
//! fractional, out of range, or duplicated within a unit. [`engine::linear_solve`]
//! therefore classifies outcomes instead of assuming success, and
//! [`oracle::count_completions`] provides ground truth at desk scale.
//!
//! Module map:
//!
//! - [`grid`] — board geometry, the cell/flat-index bijection, units, and
//!   combinatorial validity checks
//! - [`linalg`] — augmented matrices over any [`linalg::Scalar`], reduced row
//!   echelon form, rank, back-substitution and residuals
//! - [`system`] — unit-sum system construction, clue augmentation, rank
//!   formulas and pivot patterns
//! - [`engine`] — end-to-end linear solving, grid generation, maximal
//!   linearly-solvable puzzle derivation
//! - [`oracle`] — exhaustive backtracking completion counter
//!
//! The linear algebra is generic over the scalar type; all puzzle-facing
//! paths instantiate it with the exact [`Rational`] alias below so that rank
//! decisions never go through floating point.

pub mod engine;
pub mod grid;
pub mod linalg;
pub mod oracle;
pub mod rng;
pub mod system;

/// Exact rational scalar used by all puzzle-facing code paths.
///
/// Arbitrary-precision numerator and denominator, always in lowest terms
/// with a positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rational`].
pub type Integer = num_bigint::BigInt;

/// Augmented rational matrix, the concrete instantiation used by the
/// system builder and the solver.
pub type RationalMatrix = linalg::ExactMatrix<Rational>;

pub use engine::{
    classify_rank_condition, derive_max_linear_puzzle, generate_complete, linear_solve,
    RankCondition, SolveClass, SolveOutcome, Violation,
};
pub use grid::{
    cell_to_flat, flat_to_cell, partial_consistent, units_of, validate_complete, CellIndex, Grid,
    GridError, Puzzle, PuzzleKind, PuzzleSpec, Unit, UnitKind, Validity,
};
pub use linalg::{ColumnLabel, ExactMatrix, LinalgError, RrefReport, Solution};
pub use oracle::{agrees_with_linear, count_completions, AgreementReport, OracleResult};
pub use system::{
    augment_with_clues, build_system, expected_rank, pivot_unknown_pattern, unit_sum, UnitSystem,
};
