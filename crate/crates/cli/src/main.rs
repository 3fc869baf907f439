//! `dispersion`: solve, generate, inspect and draw dispersion instances.
//!
//! Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 I/O failure.

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dispersion::a1::solve_a1;
use dispersion::a2::{solve_a2, DEFAULT_EPSILON};
use dispersion::centers::solve_centers;
use dispersion::certify::{
    brute_force_opt_with, certify, opt_upper, OracleConfig, DEFAULT_NODE_BUDGET,
};
use dispersion::generate::{generate, GeneratorKind, GeneratorParams};
use dispersion::hybrid::solve_hybrid;
use dispersion::io::{
    instance_from_json, instance_to_json, solution_from_json, solution_to_json, SolutionFile,
};
use dispersion::ratio::constants_report;
use dispersion::{BallInstance, Error};

#[derive(Parser)]
#[command(
    name = "dispersion",
    version,
    about = "Max-min dispersion of points in balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write a solution with its ratio certificate.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value = "auto")]
        algorithm: AlgorithmChoice,
        /// Accuracy parameter of the LP algorithm, in (0, 1).
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Solution file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw the solution (planar instances only).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Run the grid oracle with this resolution to fill `opt_lower`.
        #[arg(long)]
        oracle_k: Option<usize>,
    },
    /// Write a seeded random instance.
    Generate {
        #[arg(short, long)]
        kind: String,
        #[arg(short, long)]
        n: usize,
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        min_gap: f64,
        #[arg(short, long, default_value_t = 2)]
        dimension: usize,
        /// Instance file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the constants of the ratio analysis with their cross-checks.
    Constants,
    /// Draw an instance and a solution as SVG.
    Svg {
        #[arg(short, long)]
        instance: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Brute-force grid search for a lower bound on the optimum (n <= 5).
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        /// Grid points per axis.
        #[arg(short, long, default_value_t = 21)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmChoice {
    Auto,
    Centers,
    A1,
    A2,
    Hybrid,
}

enum Failure {
    Invalid(String),
    Solver(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Solver(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Lp(_)
            | Error::LpNotOptimal(_)
            | Error::BudgetExceeded(_)
            | Error::GeneratorExhausted { .. }
            | Error::NoSignChange { .. } => Failure::Solver(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Io(format!("writing {}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Failure::Io(format!("writing standard output: {e}")))
        }
    }
}

fn load_instance(path: &Path) -> Result<BallInstance, Failure> {
    instance_from_json(&read(path)?)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn resolve(choice: AlgorithmChoice, inst: &BallInstance) -> AlgorithmChoice {
    match choice {
        AlgorithmChoice::Auto if inst.is_unit() => AlgorithmChoice::Hybrid,
        AlgorithmChoice::Auto if inst.is_disjoint() => AlgorithmChoice::A2,
        AlgorithmChoice::Auto => AlgorithmChoice::Centers,
        other => other,
    }
}

fn solve(
    input: &Path,
    choice: AlgorithmChoice,
    epsilon: f64,
    output: Option<&Path>,
    svg_path: Option<&Path>,
    oracle_k: Option<usize>,
) -> Result<(), Failure> {
    let inst = load_instance(input)?;
    let (name, solution) = match resolve(choice, &inst) {
        AlgorithmChoice::Centers => ("centers".to_string(), solve_centers(&inst)),
        AlgorithmChoice::A1 => ("a1".to_string(), solve_a1(&inst)?.solution),
        AlgorithmChoice::A2 => {
            let out = solve_a2(&inst, epsilon).map_err(|e| match e {
                Error::Overlap { .. } => Failure::Invalid(format!("a2 needs disjoint balls: {e}")),
                other => other.into(),
            })?;
            ("a2".to_string(), out.solution)
        }
        AlgorithmChoice::Hybrid => {
            let out = solve_hybrid(&inst, epsilon)?;
            (format!("hybrid/{}", out.winner), out.solution)
        }
        AlgorithmChoice::Auto => unreachable!("auto is resolved above"),
    };
    let mut cert = certify(&solution, &inst)?;
    if let Some(k) = oracle_k {
        cert.opt_lower = Some(brute_force_opt_with(&inst, &OracleConfig::new(k))?.best);
    }
    let file = SolutionFile::new(name, solution.points, &cert);
    write(output, &solution_to_json(&file))?;
    if let Some(p) = svg_path {
        write(Some(p), &svg::render(&inst, &file)?)?;
    }
    Ok(())
}

/// Drops digits after the fourth decimal.
fn truncate4(x: f64) -> f64 {
    (x * 1e4).trunc() / 1e4
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            input,
            algorithm,
            epsilon,
            output,
            svg,
            oracle_k,
        } => solve(
            &input,
            algorithm,
            epsilon,
            output.as_deref(),
            svg.as_deref(),
            oracle_k,
        ),
        Command::Generate {
            kind,
            n,
            seed,
            min_gap,
            dimension,
            output,
        } => {
            let kind: GeneratorKind = kind.parse()?;
            let params = GeneratorParams::new(kind, n, seed)
                .min_gap(min_gap)
                .dimension(dimension);
            write(output.as_deref(), &instance_to_json(&generate(&params)?))
        }
        Command::Constants => {
            let mut text = String::from("# 4-decimal column is truncated, not rounded\n");
            for row in constants_report()? {
                let check = row
                    .cross_check
                    .map_or_else(|| "-".to_string(), |c| format!("{c:.10}"));
                let _ = writeln!(
                    text,
                    "{} = {:.4}   (full {:.12}, cross-check {check}, residual {:.1e})",
                    row.name,
                    truncate4(row.value),
                    row.value,
                    row.residual
                );
            }
            write(None, &text)
        }
        Command::Svg {
            instance,
            solution,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let sol = solution_from_json(&read(&solution)?)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", solution.display())))?;
            write(Some(&output), &svg::render(&inst, &sol)?)
        }
        Command::Oracle { input, k, budget } => {
            let inst = load_instance(&input)?;
            let cfg = OracleConfig {
                k,
                node_budget: budget,
                stop_at: None,
            };
            let res = brute_force_opt_with(&inst, &cfg)?;
            let (upper, _) = opt_upper(&inst)?;
            let finite = |x: f64| x.is_finite().then_some(x);
            let report = serde_json::json!({
                "best": finite(res.best),
                "grid_error": finite(res.grid_error),
                "nodes": res.nodes,
                "opt_upper": finite(upper),
            });
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            write(None, &format!("{text}\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
