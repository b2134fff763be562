//! Argument parsing and dispatch for the `ucycle` binary.
//!
//! Exit codes: 0 on success, 1 when a cycle fails validation, a check fails
//! or counts disagree, 2 for bad parameters (including budget and size
//! limits).

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ucycle_core::counting::{self, CountReport, Method, TourBudget, DEFAULT_MAX_VERTICES};
use ucycle_core::perm::{is_universal_cycle, CyclicSequence, Verdict};
use ucycle_core::spectral::{self, CheckKind, CheckReport};
use ucycle_core::{Error, TransitionDigraph};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ucycle",
    version,
    about = "Universal cycles for k-permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    MatrixTree,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Lemma2,
    WalkTable,
    Multiplicities,
    Thm1,
    Thm2,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count universal cycles for P(n,k).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        /// Largest transition digraph (vertices) for the determinant route.
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: u64,
        #[arg(long, default_value_t = TourBudget::default().max_arcs)]
        max_arcs: usize,
        #[arg(long, default_value_t = TourBudget::default().max_count)]
        max_count: u64,
    },
    /// Print one universal cycle.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check cycles, one per line, from a file or standard input.
    Validate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Count (or list) universal cycles by exhaustive search.
    Bruteforce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = TourBudget::default().max_arcs)]
        max_arcs: usize,
        #[arg(long, default_value_t = TourBudget::default().max_count)]
        max_count: u64,
        /// Print every cycle in canonical rotation, in lexicographic order.
        #[arg(long, conflicts_with = "json")]
        emit_cycles: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the exact spectral checks for the k = 2 and k = 3 digraphs.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "all")]
        check: CheckArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the transition digraph as `u -> v : label` lines.
    DumpDigraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<u8, CliError>;

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Count {
            n,
            k,
            method,
            json,
            max_vertices,
            max_arcs,
            max_count,
        } => {
            let method = match method {
                MethodArg::Closed => Method::Closed,
                MethodArg::MatrixTree => Method::MatrixTree,
                MethodArg::All => Method::All,
            };
            let budget = TourBudget::new(max_arcs, max_count)?;
            let report = CountReport::compute(n, k, method, &budget, max_vertices)?;
            if json {
                print_json(out, &report)?;
            } else {
                print_count(out, &report)?;
            }
            Ok(if report.agree.all {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Generate { n, k, seed } => {
            let cycle = counting::generate_cycle(n, k, seed)?;
            writeln!(out, "{cycle}")?;
            Ok(EXIT_OK)
        }
        Command::Validate { n, k, file, json } => {
            let input: Box<dyn BufRead> = match file {
                Some(path) => Box::new(io::BufReader::new(fs::File::open(path)?)),
                None => Box::new(io::BufReader::new(io::stdin())),
            };
            validate(n, k, input, json, out, err)
        }
        Command::Bruteforce {
            n,
            k,
            max_arcs,
            max_count,
            emit_cycles,
            json,
        } => {
            let budget = TourBudget::new(max_arcs, max_count)?;
            if emit_cycles {
                let mut write_err = None;
                let emitted = counting::enumerate_all(n, k, &budget, |c| {
                    if write_err.is_none() {
                        if let Err(e) = writeln!(out, "{c}") {
                            write_err = Some(e);
                        }
                    }
                })?;
                if let Some(e) = write_err {
                    return Err(e.into());
                }
                writeln!(err, "{emitted} universal cycles")?;
            } else {
                let count = counting::count_bruteforce(n, k, &budget)?;
                if json {
                    print_json(out, &json!({ "n": n, "k": k, "brute_force": count }))?;
                } else {
                    writeln!(out, "{count}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { n, check, json } => verify(n, check, json, out),
        Command::DumpDigraph { n, k } => {
            let d = TransitionDigraph::build(n, k)?;
            write!(out, "{}", d.dump())?;
            Ok(EXIT_OK)
        }
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn print_count(out: &mut dyn Write, r: &CountReport) -> io::Result<()> {
    let show = |c: &Option<ucycle_core::BigCount>| match c {
        Some(c) => c.to_string(),
        None => "-".to_string(),
    };
    writeln!(out, "n = {}, k = {}", r.n, r.k)?;
    writeln!(out, "closed form:  {}", show(&r.closed_form))?;
    writeln!(out, "matrix-tree:  {}", show(&r.matrix_tree))?;
    writeln!(out, "brute force:  {}", show(&r.brute_force))?;
    writeln!(
        out,
        "agree:        {}",
        if r.agree.all { "yes" } else { "NO" }
    )
}

#[derive(Serialize)]
struct LineVerdict {
    line: usize,
    valid: bool,
    reason: Option<String>,
}

fn validate(
    n: usize,
    k: usize,
    input: Box<dyn BufRead>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    if n == 0 || k == 0 || k > n {
        return Err(Error::Parameter(format!("need 1 <= k <= n, got n = {n}, k = {k}")).into());
    }
    let mut verdicts = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reason = match line.parse::<CyclicSequence>() {
            Ok(c) => match is_universal_cycle(&c, n, k) {
                Verdict::Valid => None,
                Verdict::Invalid(v) => Some(v.to_string()),
            },
            Err(e) => Some(e.to_string()),
        };
        verdicts.push(LineVerdict {
            line: i + 1,
            valid: reason.is_none(),
            reason,
        });
    }
    if verdicts.is_empty() {
        writeln!(err, "warning: no cycles to validate")?;
    }
    let all_valid = verdicts.iter().all(|v| v.valid);
    if json {
        print_json(
            out,
            &json!({ "n": n, "k": k, "all_valid": all_valid, "lines": verdicts }),
        )?;
    } else {
        for v in &verdicts {
            match &v.reason {
                None => writeln!(out, "line {}: valid", v.line)?,
                Some(r) => writeln!(out, "line {}: invalid: {r}", v.line)?,
            }
        }
    }
    Ok(if all_valid { EXIT_OK } else { EXIT_FAILED })
}

fn verify(n: usize, check: CheckArg, json: bool, out: &mut dyn Write) -> CliResult {
    let selected: Vec<CheckKind> = match check {
        CheckArg::Lemma2 => vec![CheckKind::Lemma2],
        CheckArg::WalkTable => vec![CheckKind::WalkTable],
        CheckArg::Multiplicities => vec![CheckKind::Multiplicities],
        CheckArg::Thm1 => vec![CheckKind::Thm1],
        CheckArg::Thm2 => vec![CheckKind::Thm2],
        CheckArg::All => CheckKind::ALL.to_vec(),
    };
    // Under `all`, checks that need a larger n are skipped rather than failed.
    let (runnable, skipped): (Vec<_>, Vec<_>) = if selected.len() > 1 {
        selected.into_iter().partition(|c| n >= c.min_n())
    } else {
        (selected, vec![])
    };
    if runnable.is_empty() {
        return Err(Error::Parameter(format!("no check applies to n = {n}")).into());
    }
    let reports = runnable
        .into_iter()
        .map(|c| spectral::run_check(c, n))
        .collect::<Result<Vec<CheckReport>, _>>()?;
    let passed = reports.iter().all(CheckReport::passed);
    if json {
        let skipped: Vec<&str> = skipped.iter().map(|c| c.name()).collect();
        print_json(
            out,
            &json!({ "n": n, "passed": passed, "checks": reports, "skipped": skipped }),
        )?;
    } else {
        for r in &reports {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            writeln!(out, "{:<15} n = {n}: {verdict}", r.check)?;
            if let Some(c) = r.counterexample() {
                writeln!(
                    out,
                    "  first mismatch at ({}, {}): expected {}, got {}",
                    c.row, c.col, c.expected, c.got
                )?;
            }
        }
        for c in &skipped {
            writeln!(
                out,
                "{:<15} n = {n}: skipped (needs n >= {})",
                c.name(),
                c.min_n()
            )?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}
