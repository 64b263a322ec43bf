//! `unitsum`: rank analysis, solving, generation and verification of Latin
//! squares and Sudokus through their unit-sum linear systems.
//!
//! Exit codes: 0 success / unique-valid solve, 2 usage or input errors,
//! 3 underdetermined, 4 inconsistent, 5 invalid (unique-invalid solve or
//! failed verification).

mod puzzle_file;
mod report;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{FromPrimitive, Zero};
use unitsum_core::{
    agrees_with_linear, build_system, count_completions, derive_max_linear_puzzle, expected_rank,
    generate_complete, linear_solve, validate_complete, Grid, Puzzle, PuzzleSpec, Rational,
    SolveClass, SolveOutcome, Validity,
};

const EXIT_UNDERDETERMINED: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;
const EXIT_INVALID: u8 = 5;

#[derive(Parser)]
#[command(
    name = "unitsum",
    version,
    about = "Latin squares and Sudokus as exact unit-sum linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the rank of a unit-sum system and compare it to the formula
    Rank(RankArgs),
    /// Solve a puzzle file through the linear system
    Solve(SolveArgs),
    /// Emit a complete grid, or a maximal linearly-solvable puzzle
    Generate(GenerateArgs),
    /// Check a completed grid file for validity and unit-sum residual
    Verify(VerifyArgs),
    /// Count completions of a puzzle file by exhaustive backtracking
    Count(CountArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Latin,
    Sudoku,
}

#[derive(Args)]
struct SpecArgs {
    /// Puzzle kind
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Order of the square
    #[arg(long)]
    n: Option<usize>,
    /// Block rows (sudoku only)
    #[arg(long)]
    l: Option<usize>,
    /// Block columns (sudoku only)
    #[arg(long)]
    m: Option<usize>,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<PuzzleSpec, CliError> {
        let kind = self
            .kind
            .ok_or_else(|| CliError::usage("--kind is required"))?;
        let n = self.n.ok_or_else(|| CliError::usage("--n is required"))?;
        match kind {
            KindArg::Latin => {
                if self.l.is_some() || self.m.is_some() {
                    return Err(CliError::usage("--l/--m only apply to sudoku"));
                }
                PuzzleSpec::latin(n).map_err(CliError::spec)
            }
            KindArg::Sudoku => {
                let l = self
                    .l
                    .ok_or_else(|| CliError::usage("sudoku requires --l"))?;
                let m = self
                    .m
                    .ok_or_else(|| CliError::usage("sudoku requires --m"))?;
                PuzzleSpec::sudoku(n, l, m).map_err(CliError::spec)
            }
        }
    }
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Write the reduced system to this path
    #[arg(long, value_name = "PATH")]
    dump_rref: Option<PathBuf>,
    /// Print one rank row per block factorization up to --max-n
    #[arg(long)]
    table: bool,
    /// Largest order covered by --table
    #[arg(long, value_name = "N")]
    max_n: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// Puzzle file
    file: PathBuf,
    /// Emit a JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Generation seed; 0 keeps the base pattern
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Blank the pivot-pattern cells instead of emitting the full grid
    #[arg(long)]
    max_linear: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Completed grid file
    file: PathBuf,
}

#[derive(Args)]
struct CountArgs {
    /// Puzzle file
    file: PathBuf,
    /// Stop counting after this many completions
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(puzzle_file::ParseError),
    Message(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Message(msg.into())
    }

    fn spec(err: unitsum_core::GridError) -> Self {
        CliError::Message(err.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Parse(err) => write!(f, "{err}"),
            CliError::Message(msg) => write!(f, "{msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rank(args) => cmd_rank(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Count(args) => cmd_count(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn read_puzzle(path: &PathBuf) -> Result<Puzzle, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    puzzle_file::parse(&text).map_err(CliError::Parse)
}

fn rank_line(spec: &PuzzleSpec) -> (usize, usize) {
    let computed = build_system::<Rational>(spec).matrix().rank();
    (computed, expected_rank(spec))
}

fn cmd_rank(args: RankArgs) -> Result<u8, CliError> {
    if args.table {
        let max_n = args
            .max_n
            .ok_or_else(|| CliError::usage("--table requires --max-n"))?;
        if args.dump_rref.is_some() {
            return Err(CliError::usage(
                "--dump-rref needs a single spec, not --table",
            ));
        }
        for n in 2..=max_n {
            for l in 2..n {
                if n % l != 0 {
                    continue;
                }
                let m = n / l;
                if m < 2 {
                    continue;
                }
                let spec = PuzzleSpec::sudoku(n, l, m).map_err(CliError::spec)?;
                let (computed, formula) = rank_line(&spec);
                println!(
                    "n={n} l={l} m={m} rank={computed} formula={formula} match={}",
                    if computed == formula { "yes" } else { "no" }
                );
            }
        }
        return Ok(0);
    }

    let spec = args.spec.to_spec()?;
    let system = build_system::<Rational>(&spec);
    let rref = system.matrix().rref();
    let formula = expected_rank(&spec);
    println!(
        "rank={} formula={formula} match={}",
        rref.rank,
        if rref.rank == formula { "yes" } else { "no" }
    );
    if let Some(path) = args.dump_rref {
        fs::write(&path, rref.reduced.dump()).map_err(|e| CliError::Io(path, e))?;
    }
    Ok(0)
}

fn solve_exit_code(outcome: &SolveOutcome) -> u8 {
    match outcome.class {
        SolveClass::UniqueValid => 0,
        SolveClass::Underdetermined => EXIT_UNDERDETERMINED,
        SolveClass::Inconsistent => EXIT_INCONSISTENT,
        SolveClass::UniqueInvalid => EXIT_INVALID,
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8, CliError> {
    let puzzle = read_puzzle(&args.file)?;
    let outcome = linear_solve(&puzzle);
    if args.json {
        let report = report::SolveReport::from_outcome(&outcome);
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!(
            "outcome={} rank={} unknowns={}",
            outcome.class, outcome.rank, outcome.unknowns
        );
        match outcome.class {
            SolveClass::UniqueValid => {
                let solution = outcome.solution.as_ref().expect("unique-valid has a grid");
                print!("{}", puzzle_file::emit_grid_body(solution));
            }
            SolveClass::Underdetermined => {
                let cells = outcome.free_cells.as_ref().expect("free cells present");
                let rendered: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
                println!("free: {}", rendered.join(" "));
            }
            SolveClass::UniqueInvalid => {
                for violation in outcome.violations.as_ref().expect("violations present") {
                    println!("violation: {violation}");
                }
            }
            SolveClass::Inconsistent => {}
        }
    }
    Ok(solve_exit_code(&outcome))
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, CliError> {
    let spec = args.spec.to_spec()?;
    let grid = generate_complete(&spec, args.seed);
    if args.max_linear {
        let puzzle = derive_max_linear_puzzle(&grid).expect("generated grids are valid");
        print!("{}", puzzle_file::emit_puzzle(&puzzle));
    } else {
        print!("{}", puzzle_file::emit_grid(&grid));
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let puzzle = read_puzzle(&args.file)?;
    if puzzle.blank_count() > 0 {
        return Err(CliError::usage(
            "grid contains blanks; use `solve` for puzzles",
        ));
    }
    let cells: Vec<u32> = puzzle
        .cells()
        .iter()
        .map(|c| c.expect("no blanks"))
        .collect();
    let grid = Grid::from_flat(puzzle.spec().clone(), cells).expect("values validated by parser");

    let system = build_system::<Rational>(grid.spec());
    let assignment: Vec<Rational> = grid
        .cells()
        .iter()
        .map(|&v| Rational::from_u32(v).expect("cell value fits"))
        .collect();
    let residual = system
        .matrix()
        .residual(&assignment)
        .expect("assignment length matches");
    let residual_zero = residual.iter().all(Zero::is_zero);

    match validate_complete(&grid) {
        Validity::Valid => {
            println!("valid");
            println!(
                "residual={}",
                if residual_zero { "zero" } else { "nonzero" }
            );
            Ok(0)
        }
        Validity::Invalid { violated } => {
            println!("invalid");
            for unit in &violated {
                println!("violated: {unit}");
            }
            println!(
                "residual={}",
                if residual_zero { "zero" } else { "nonzero" }
            );
            Ok(EXIT_INVALID)
        }
    }
}

fn cmd_count(args: CountArgs) -> Result<u8, CliError> {
    let puzzle = read_puzzle(&args.file)?;
    let result = count_completions(&puzzle, args.cap);
    println!(
        "count={} capped={}",
        result.count,
        if result.capped { "yes" } else { "no" }
    );
    let agreement = agrees_with_linear(&puzzle);
    println!(
        "linear={} agreement={}",
        agreement.outcome.class,
        if agreement.agrees { "yes" } else { "no" }
    );
    Ok(0)
}
