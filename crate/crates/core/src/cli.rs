//! The `rna` command line: generators, solvers, bounds, the cycle-power
//! verification sweep and the single-vertex reduction.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 verification mismatch or I/O failure, 2 invalid input, 3 size guard
//! exceeded, 4 reduction precondition violated.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{kang_bound, reduce_cycle_power, ska_bounds, theorem_value, BoundsError};
use crate::coloring::BalancedColoring;
use crate::exact::{
    branch_and_bound_rna, brute_force_rna_with_guard, BnbOptions, Method, SolveError, SolveReport,
    DEFAULT_BNB_GUARD, DEFAULT_BRUTE_GUARD,
};
use crate::graph::{cycle_power, make_family, parse_edge_list, serialize_edge_list, FamilyTag};
use crate::heuristic::{local_search_rna, LocalSearchOptions, DEFAULT_RESTARTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_REDUCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rna",
    version,
    about = "Minimum bisection width (rna number) of graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph in edge-list format.
    Gen {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the bisection width of an edge-list file, printing JSON.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
        /// Largest vertex count the exact solvers accept.
        #[arg(long)]
        guard_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long)]
        max_passes: Option<usize>,
        /// Node limit for branch and bound.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare exact bisection widths of C_n^d against d(d+1), printing CSV.
    Verify {
        /// Power range, e.g. `2..5` or `3`.
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<usize>,
        #[arg(long)]
        n_max: usize,
        /// Smallest n per d; defaults to 2d+1.
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BRUTE_GUARD)]
        guard_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Kang bound, and the sandwich bounds for tagged cycle powers.
    Bounds { input: PathBuf },
    /// Delete a majority-class vertex of C_n^d and rebuild C_{n-1}^d.
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Coloring as a string of '1'/'2'.
        #[arg(long)]
        coloring: String,
        #[arg(long, default_value_t = 0)]
        pivot: usize,
        /// Also write the reduced graph as an edge list.
        #[arg(long)]
        h_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    CyclePower,
    Path,
    Cycle,
    Star,
    Wheel,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Bnb,
    Heuristic,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number {t:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// A failed command: diagnostic plus exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl fmt::Display) -> Self {
        CliError {
            code,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(EXIT_FAILURE, e)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::TooLarge { .. } => EXIT_GUARD,
            SolveError::TooSmall { .. } => EXIT_INPUT,
        };
        CliError::new(code, e)
    }
}

#[derive(Debug, Serialize)]
pub struct SolveJson {
    pub rna: usize,
    pub witness: String,
    pub method: Method,
    pub nodes: u64,
    pub elapsed_ms: f64,
    pub optimal: bool,
}

impl From<&SolveReport> for SolveJson {
    fn from(r: &SolveReport) -> Self {
        SolveJson {
            rna: r.rna_value,
            witness: r.witness.to_string(),
            method: r.method,
            nodes: r.nodes_explored,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
            optimal: r.optimal,
        }
    }
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct BoundsJson {
    pub kang: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ska_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ska_upper: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "Match",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// One grid point of the verification sweep.
#[derive(Debug, Clone)]
pub struct VerificationRecord {
    pub d: usize,
    pub n: usize,
    /// `None` when the point was skipped by the size guard.
    pub exact: Option<usize>,
    pub formula: usize,
    pub witness: Option<BalancedColoring>,
    pub kang: usize,
    pub lower: usize,
    pub elapsed_ms: f64,
    pub status: Status,
}

pub const CSV_HEADER: &str = "d,n,exact,formula,kang,lower,elapsed_ms,status";

impl VerificationRecord {
    pub fn csv_row(&self) -> String {
        let exact = self.exact.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:.3},{}",
            self.d,
            self.n,
            exact,
            self.formula,
            self.kang,
            self.lower,
            self.elapsed_ms,
            self.status
        )
    }
}

/// Solves `C_n^d` exactly and compares against `d(d+1)`.
pub fn verify_point(
    d: usize,
    n: usize,
    guard_n: usize,
    method: MethodArg,
    seed: u64,
) -> Result<VerificationRecord, CliError> {
    let formula = theorem_value(d).map_err(|e| CliError::new(EXIT_INPUT, e))?;
    let (lower, _) = ska_bounds(d).map_err(|e| CliError::new(EXIT_INPUT, e))?;
    let g = cycle_power(n, d).map_err(|e| CliError::new(EXIT_INPUT, e))?;
    let kang = kang_bound(&g);
    let start = Instant::now();
    let solved = match method {
        MethodArg::Bnb => branch_and_bound_rna(
            &g,
            &BnbOptions {
                guard_n,
                seed,
                ..Default::default()
            },
        ),
        _ => brute_force_rna_with_guard(&g, guard_n),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let record = match solved {
        Ok(r) => VerificationRecord {
            d,
            n,
            exact: Some(r.rna_value),
            formula,
            witness: Some(r.witness),
            kang,
            lower,
            elapsed_ms,
            status: if r.rna_value == formula {
                Status::Match
            } else {
                Status::Mismatch
            },
        },
        Err(SolveError::TooLarge { .. }) => VerificationRecord {
            d,
            n,
            exact: None,
            formula,
            witness: None,
            kang,
            lower,
            elapsed_ms,
            status: Status::Skipped,
        },
        Err(e) => return Err(e.into()),
    };
    Ok(record)
}

/// Parses arguments from the process and runs, returning the exit code.
pub fn main_from_env() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<crate::graph::Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
        .map_err(|e| CliError::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Gen {
            family,
            n,
            d,
            output,
        } => {
            let tag = match family {
                FamilyArg::CyclePower => FamilyTag::CyclePower {
                    n,
                    d: d.ok_or_else(|| CliError::new(EXIT_INPUT, "cycle-power needs --d"))?,
                },
                FamilyArg::Path => FamilyTag::Path(n),
                FamilyArg::Cycle => FamilyTag::Cycle(n),
                FamilyArg::Star => FamilyTag::Star(n),
                FamilyArg::Wheel => FamilyTag::Wheel(n),
                FamilyArg::Complete => FamilyTag::Complete(n),
            };
            let g = make_family(tag).map_err(|e| CliError::new(EXIT_INPUT, e))?;
            let text = serialize_edge_list(&g);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Solve {
            input,
            method,
            guard_n,
            seed,
            restarts,
            max_passes,
            budget,
        } => {
            let g = read_graph(&input)?;
            let report = match method {
                MethodArg::Brute => {
                    brute_force_rna_with_guard(&g, guard_n.unwrap_or(DEFAULT_BRUTE_GUARD))?
                }
                MethodArg::Bnb => branch_and_bound_rna(
                    &g,
                    &BnbOptions {
                        guard_n: guard_n.unwrap_or(DEFAULT_BNB_GUARD),
                        node_budget: budget,
                        warm_start: true,
                        seed,
                    },
                )?,
                MethodArg::Heuristic => local_search_rna(
                    &g,
                    &LocalSearchOptions {
                        seed,
                        restarts,
                        max_passes,
                    },
                )?,
            };
            let json = serde_json::to_string(&SolveJson::from(&report))
                .map_err(|e| CliError::new(EXIT_FAILURE, e))?;
            writeln!(out, "{json}")?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            d,
            n_max,
            n_min,
            guard_n,
            jobs,
            method,
            seed,
        } => {
            if *d.start() < 2 {
                return Err(CliError::new(EXIT_INPUT, "verify needs d >= 2"));
            }
            let grid: Vec<(usize, usize)> = d
                .flat_map(|d| {
                    let lo = n_min.unwrap_or(0).max(2 * d + 1);
                    (lo..=n_max).map(move |n| (d, n))
                })
                .collect();
            writeln!(out, "{CSV_HEADER}")?;
            let mut all_match = true;
            if jobs <= 1 {
                for &(d, n) in &grid {
                    let rec = verify_point(d, n, guard_n, method, seed)?;
                    all_match &= rec.status != Status::Mismatch;
                    writeln!(out, "{}", rec.csv_row())?;
                    out.flush()?;
                }
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| CliError::new(EXIT_FAILURE, e))?;
                // collect keeps grid order, which is sorted by (d, n)
                let records: Vec<VerificationRecord> = pool.install(|| {
                    grid.par_iter()
                        .map(|&(d, n)| verify_point(d, n, guard_n, method, seed))
                        .collect::<Result<_, _>>()
                })?;
                for rec in &records {
                    all_match &= rec.status != Status::Mismatch;
                    writeln!(out, "{}", rec.csv_row())?;
                }
            }
            Ok(if all_match { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Bounds { input } => {
            let g = read_graph(&input)?;
            let ska = g
                .tag()
                .cycle_power_params()
                .and_then(|(_, d)| ska_bounds(d).ok());
            let json = BoundsJson {
                kang: kang_bound(&g),
                ska_lower: ska.map(|s| s.0),
                ska_upper: ska.map(|s| s.1),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&json).map_err(|e| CliError::new(EXIT_FAILURE, e))?
            )?;
            Ok(EXIT_OK)
        }
        Command::Reduce {
            n,
            d,
            coloring,
            pivot,
            h_out,
        } => {
            let f: BalancedColoring = coloring
                .parse()
                .map_err(|e| CliError::new(EXIT_REDUCE, format!("coloring: {e}")))?;
            let r = reduce_cycle_power(n, d, &f, pivot).map_err(|e| {
                let code = match e {
                    BoundsError::Graph(_) => EXIT_INPUT,
                    _ => EXIT_REDUCE,
                };
                CliError::new(code, e)
            })?;
            if let Some(path) = h_out {
                std::fs::write(path, serialize_edge_list(&r.h))?;
            }
            writeln!(out, "{}", r.to_json(n, d))?;
            Ok(EXIT_OK)
        }
    }
}
