//! Board geometry: cell indexing, units, and combinatorial validity.
//!
//! Cells are addressed either by 1-based `(row, column)` pairs or by the
//! 1-based flat index `k = (i-1)*n + j` obtained by reading the board row by
//! row. A *unit* is a row, column or block: a set of `n` cells that must
//! carry `n` distinct symbols in a completed board.

use std::fmt;

use thiserror::Error;

/// Errors from board construction and indexing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("order must be at least 1")]
    InvalidOrder,
    #[error("block dimensions {l}x{m} do not multiply to order {n}")]
    BadBlockDims { n: usize, l: usize, m: usize },
    #[error("cell ({i}, {j}) out of range for order {n}")]
    CellOutOfRange { i: usize, j: usize, n: usize },
    #[error("flat index {k} out of range for order {n}")]
    FlatOutOfRange { k: usize, n: usize },
    #[error("value {v} out of range 1..={n}")]
    ValueOutOfRange { v: u32, n: usize },
    #[error("expected {n} rows of {n} cells each")]
    ShapeMismatch { n: usize },
    #[error("specs differ: {0} vs {1}")]
    SpecMismatch(Box<PuzzleSpec>, Box<PuzzleSpec>),
}

/// Board family: plain Latin square or block-constrained Sudoku.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PuzzleKind {
    Latin,
    Sudoku,
}

/// Shape of a puzzle: kind, order `n`, and block dimensions `l x m` for
/// Sudokus (`l` block rows, `m` block columns, `l * m = n`).
///
/// Latin specs carry no blocks; `l` and `m` are stored as 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PuzzleSpec {
    kind: PuzzleKind,
    n: usize,
    l: usize,
    m: usize,
}

impl PuzzleSpec {
    /// Latin square of order `n`.
    pub fn latin(n: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::InvalidOrder);
        }
        Ok(Self {
            kind: PuzzleKind::Latin,
            n,
            l: 0,
            m: 0,
        })
    }

    /// Sudoku of order `n` with blocks of `l` rows and `m` columns.
    pub fn sudoku(n: usize, l: usize, m: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::InvalidOrder);
        }
        if l == 0 || m == 0 || l * m != n {
            return Err(GridError::BadBlockDims { n, l, m });
        }
        Ok(Self {
            kind: PuzzleKind::Sudoku,
            n,
            l,
            m,
        })
    }

    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(l, m)` for Sudoku specs, `None` for Latin.
    pub fn block_dims(&self) -> Option<(usize, usize)> {
        match self.kind {
            PuzzleKind::Latin => None,
            PuzzleKind::Sudoku => Some((self.l, self.m)),
        }
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    /// Number of units: `2n` for Latin, `3n` for Sudoku.
    pub fn unit_count(&self) -> usize {
        match self.kind {
            PuzzleKind::Latin => 2 * self.n,
            PuzzleKind::Sudoku => 3 * self.n,
        }
    }
}

impl fmt::Display for PuzzleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PuzzleKind::Latin => write!(f, "latin {}", self.n),
            PuzzleKind::Sudoku => write!(f, "sudoku {} {} {}", self.n, self.l, self.m),
        }
    }
}

/// A cell address holding the 1-based row/column pair together with the
/// matching flat index `k = (i-1)*n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    row: usize,
    col: usize,
    flat: usize,
}

impl CellIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self, GridError> {
        let flat = cell_to_flat(i, j, n)?;
        Ok(Self {
            row: i,
            col: j,
            flat,
        })
    }

    pub fn from_flat(k: usize, n: usize) -> Result<Self, GridError> {
        let (row, col) = flat_to_cell(k, n)?;
        Ok(Self { row, col, flat: k })
    }

    pub fn row(&self) -> usize {
        self.row
    }

    pub fn col(&self) -> usize {
        self.col
    }

    pub fn flat(&self) -> usize {
        self.flat
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Maps 1-based `(i, j)` to the flat index `k = (i-1)*n + j`.
pub fn cell_to_flat(i: usize, j: usize, n: usize) -> Result<usize, GridError> {
    if i < 1 || i > n || j < 1 || j > n {
        return Err(GridError::CellOutOfRange { i, j, n });
    }
    Ok((i - 1) * n + j)
}

/// Inverse of [`cell_to_flat`]: `j = 1 + (k-1) mod n`, `i = (k-j)/n + 1`.
pub fn flat_to_cell(k: usize, n: usize) -> Result<(usize, usize), GridError> {
    if k < 1 || k > n * n {
        return Err(GridError::FlatOutOfRange { k, n });
    }
    let j = 1 + (k - 1) % n;
    let i = (k - j) / n + 1;
    Ok((i, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    Row,
    Column,
    Block,
}

/// One row, column or block: `n` distinct cells that must carry `n`
/// distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub kind: UnitKind,
    /// 1-based index within its kind.
    pub index: usize,
    pub members: Vec<CellIndex>,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            UnitKind::Row => write!(f, "row {}", self.index),
            UnitKind::Column => write!(f, "column {}", self.index),
            UnitKind::Block => write!(f, "block {}", self.index),
        }
    }
}

/// Enumerates the units of a spec in canonical order: columns `1..=n`,
/// then rows `1..=n`, then (Sudoku only) blocks `1..=n`.
///
/// Block `k` (0-based) spans rows `k - (k mod l) + 1 ..` for `l` rows and
/// columns `(k mod l)*m + 1 ..` for `m` columns; its cells are listed
/// row-major within the block.
pub fn units_of(spec: &PuzzleSpec) -> Vec<Unit> {
    let n = spec.n();
    let mut units = Vec::with_capacity(spec.unit_count());
    for j in 1..=n {
        let members = (1..=n)
            .map(|i| CellIndex::new(i, j, n).expect("in range"))
            .collect();
        units.push(Unit {
            kind: UnitKind::Column,
            index: j,
            members,
        });
    }
    for i in 1..=n {
        let members = (1..=n)
            .map(|j| CellIndex::new(i, j, n).expect("in range"))
            .collect();
        units.push(Unit {
            kind: UnitKind::Row,
            index: i,
            members,
        });
    }
    if let Some((l, m)) = spec.block_dims() {
        for k in 0..n {
            let base_row = k - (k % l);
            let base_col = (k % l) * m;
            let mut members = Vec::with_capacity(n);
            for i in 1..=l {
                for j in 1..=m {
                    members.push(CellIndex::new(base_row + i, base_col + j, n).expect("in range"));
                }
            }
            units.push(Unit {
                kind: UnitKind::Block,
                index: k + 1,
                members,
            });
        }
    }
    units
}

/// A completely filled board with every cell in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    spec: PuzzleSpec,
    cells: Vec<u32>,
}

impl Grid {
    /// Builds a grid from row-major rows, validating shape and value range.
    pub fn from_rows(spec: PuzzleSpec, rows: &[Vec<u32>]) -> Result<Self, GridError> {
        let n = spec.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GridError::ShapeMismatch { n });
        }
        let cells: Vec<u32> = rows.iter().flatten().copied().collect();
        Self::from_flat(spec, cells)
    }

    /// Builds a grid from a flat row-major cell vector.
    pub fn from_flat(spec: PuzzleSpec, cells: Vec<u32>) -> Result<Self, GridError> {
        let n = spec.n();
        if cells.len() != spec.cell_count() {
            return Err(GridError::ShapeMismatch { n });
        }
        for &v in &cells {
            if v < 1 || v as usize > n {
                return Err(GridError::ValueOutOfRange { v, n });
            }
        }
        Ok(Self { spec, cells })
    }

    pub fn spec(&self) -> &PuzzleSpec {
        &self.spec
    }

    /// Value at 1-based `(i, j)`. Panics if out of range.
    pub fn value(&self, i: usize, j: usize) -> u32 {
        let k = cell_to_flat(i, j, self.spec.n()).expect("cell in range");
        self.cells[k - 1]
    }

    /// Row-major cell values; the cell with flat index `k` is at `k - 1`.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.spec.n())
    }
}

/// A partially filled board; `None` marks an unknown cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Puzzle {
    spec: PuzzleSpec,
    cells: Vec<Option<u32>>,
}

impl Puzzle {
    pub fn from_rows(spec: PuzzleSpec, rows: &[Vec<Option<u32>>]) -> Result<Self, GridError> {
        let n = spec.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GridError::ShapeMismatch { n });
        }
        let cells: Vec<Option<u32>> = rows.iter().flatten().copied().collect();
        Self::from_flat(spec, cells)
    }

    pub fn from_flat(spec: PuzzleSpec, cells: Vec<Option<u32>>) -> Result<Self, GridError> {
        let n = spec.n();
        if cells.len() != spec.cell_count() {
            return Err(GridError::ShapeMismatch { n });
        }
        for v in cells.iter().flatten() {
            if *v < 1 || *v as usize > n {
                return Err(GridError::ValueOutOfRange { v: *v, n });
            }
        }
        Ok(Self { spec, cells })
    }

    /// Puzzle with every cell unknown.
    pub fn empty(spec: PuzzleSpec) -> Self {
        let cells = vec![None; spec.cell_count()];
        Self { spec, cells }
    }

    /// All cells of `grid` given as clues.
    pub fn from_grid(grid: &Grid) -> Self {
        Self {
            spec: grid.spec().clone(),
            cells: grid.cells().iter().map(|&v| Some(v)).collect(),
        }
    }

    pub fn spec(&self) -> &PuzzleSpec {
        &self.spec
    }

    /// Value at 1-based `(i, j)`, `None` if unknown. Panics if out of range.
    pub fn value(&self, i: usize, j: usize) -> Option<u32> {
        let k = cell_to_flat(i, j, self.spec.n()).expect("cell in range");
        self.cells[k - 1]
    }

    pub fn cells(&self) -> &[Option<u32>] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Option<u32>]> {
        self.cells.chunks(self.spec.n())
    }

    /// Known cells in flat-index order as `(cell, value)` pairs.
    pub fn clues(&self) -> impl Iterator<Item = (CellIndex, u32)> + '_ {
        let n = self.spec.n();
        self.cells.iter().enumerate().filter_map(move |(idx, v)| {
            v.map(|v| (CellIndex::from_flat(idx + 1, n).expect("in range"), v))
        })
    }

    /// Unknown cells in flat-index order.
    pub fn blanks(&self) -> impl Iterator<Item = CellIndex> + '_ {
        let n = self.spec.n();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(move |(idx, _)| CellIndex::from_flat(idx + 1, n).expect("in range"))
    }

    pub fn blank_count(&self) -> usize {
        self.cells.iter().filter(|v| v.is_none()).count()
    }

    pub fn clue_count(&self) -> usize {
        self.cells.len() - self.blank_count()
    }
}

/// Result of the full combinatorial check on a completed grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid { violated: Vec<Unit> },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn violated(&self) -> &[Unit] {
        match self {
            Validity::Valid => &[],
            Validity::Invalid { violated } => violated,
        }
    }
}

/// Checks that every unit of `grid` carries `n` distinct values.
///
/// This is the full combinatorial condition, strictly stronger than the
/// unit-sum linear system: every valid grid satisfies the system, but a
/// grid can satisfy the system (all unit sums equal) while duplicating
/// values within a unit.
pub fn validate_complete(grid: &Grid) -> Validity {
    let n = grid.spec().n();
    let mut violated = Vec::new();
    let mut seen = vec![false; n + 1];
    for unit in units_of(grid.spec()) {
        seen.fill(false);
        let mut ok = true;
        for cell in &unit.members {
            let v = grid.cells()[cell.flat() - 1] as usize;
            if seen[v] {
                ok = false;
                break;
            }
            seen[v] = true;
        }
        if !ok {
            violated.push(unit);
        }
    }
    if violated.is_empty() {
        Validity::Valid
    } else {
        Validity::Invalid { violated }
    }
}

/// True iff no unit of `puzzle` contains a duplicated known value.
///
/// A cheap fail-fast check before building linear systems; blanks are
/// ignored, so the empty puzzle is trivially consistent.
pub fn partial_consistent(puzzle: &Puzzle) -> bool {
    let n = puzzle.spec().n();
    let mut seen = vec![false; n + 1];
    for unit in units_of(puzzle.spec()) {
        seen.fill(false);
        for cell in &unit.members {
            if let Some(v) = puzzle.cells()[cell.flat() - 1] {
                let v = v as usize;
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
    }
    true
}
