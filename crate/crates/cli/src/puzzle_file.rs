//! The puzzle file format.
//!
//! Line 1 is the header, `latin <n>` or `sudoku <n> <l> <m>`. The next `n`
//! lines hold `n` whitespace-separated tokens each: a decimal value in
//! `1..=n`, or `.` for an unknown cell (`0` is accepted on input as an
//! alias, output always uses `.`). Anything after the body must be blank.

use std::fmt;

use unitsum_core::{Grid, Puzzle, PuzzleSpec};

/// Parse failure with 1-based line and column for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: Option<usize>, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(column) => write!(f, "line {}, column {}: {}", self.line, column, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Tokens of a line together with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_usize(token: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, Some(column), format!("invalid {what} `{token}`")))
}

fn parse_header(line: &str, line_no: usize) -> Result<PuzzleSpec, ParseError> {
    let toks = tokens(line);
    let Some((_, kind)) = toks.first() else {
        return Err(ParseError::new(
            line_no,
            None,
            "missing header `latin <n>` or `sudoku <n> <l> <m>`",
        ));
    };
    match *kind {
        "latin" => {
            if toks.len() != 2 {
                return Err(ParseError::new(line_no, None, "expected `latin <n>`"));
            }
            let n = parse_usize(toks[1].1, line_no, toks[1].0, "order")?;
            PuzzleSpec::latin(n)
                .map_err(|e| ParseError::new(line_no, Some(toks[1].0), e.to_string()))
        }
        "sudoku" => {
            if toks.len() != 4 {
                return Err(ParseError::new(
                    line_no,
                    None,
                    "expected `sudoku <n> <l> <m>`",
                ));
            }
            let n = parse_usize(toks[1].1, line_no, toks[1].0, "order")?;
            let l = parse_usize(toks[2].1, line_no, toks[2].0, "block rows")?;
            let m = parse_usize(toks[3].1, line_no, toks[3].0, "block columns")?;
            PuzzleSpec::sudoku(n, l, m)
                .map_err(|e| ParseError::new(line_no, Some(toks[1].0), e.to_string()))
        }
        other => Err(ParseError::new(
            line_no,
            Some(toks[0].0),
            format!("unknown kind `{other}`, expected `latin` or `sudoku`"),
        )),
    }
}

/// Parses a full puzzle file.
pub fn parse(text: &str) -> Result<Puzzle, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let spec = parse_header(header, 1)?;
    let n = spec.n();

    let mut cells: Vec<Option<u32>> = Vec::with_capacity(n * n);
    for row in 0..n {
        let line_no = row + 2;
        let Some(line) = lines.next() else {
            return Err(ParseError::new(
                line_no,
                None,
                format!("missing grid row {} of {n}", row + 1),
            ));
        };
        let toks = tokens(line);
        if toks.len() != n {
            return Err(ParseError::new(
                line_no,
                None,
                format!("expected {n} cells, found {}", toks.len()),
            ));
        }
        for (column, token) in toks {
            if token == "." || token == "0" {
                cells.push(None);
                continue;
            }
            let value: u32 = token.parse().map_err(|_| {
                ParseError::new(line_no, Some(column), format!("invalid cell `{token}`"))
            })?;
            if value < 1 || value as usize > n {
                return Err(ParseError::new(
                    line_no,
                    Some(column),
                    format!("value {value} out of range 1..={n}"),
                ));
            }
            cells.push(Some(value));
        }
    }
    for (extra, line) in lines.enumerate() {
        if !line.trim().is_empty() {
            return Err(ParseError::new(
                n + 2 + extra,
                None,
                "unexpected content after the grid",
            ));
        }
    }
    Puzzle::from_flat(spec, cells).map_err(|e| ParseError::new(1, None, e.to_string()))
}

/// Renders a puzzle; unknowns as `.`.
pub fn emit_puzzle(puzzle: &Puzzle) -> String {
    let mut out = format!("{}\n", puzzle.spec());
    for row in puzzle.rows() {
        let line: Vec<String> = row
            .iter()
            .map(|cell| match cell {
                Some(v) => v.to_string(),
                None => ".".to_string(),
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a completed grid.
pub fn emit_grid(grid: &Grid) -> String {
    let mut out = format!("{}\n", grid.spec());
    for row in grid.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Body-only rendering of a grid (no header line).
pub fn emit_grid_body(grid: &Grid) -> String {
    let mut out = String::new();
    for row in grid.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
