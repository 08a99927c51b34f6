//! qtorus: exact computations for quantum tori at a root of unity — normal
//! forms, PI degrees, simple-module matrices, verification, and isomorphism.
//!
//! Input is a single JSON document (file argument or standard input):
//! `{"m": .., "H": [[..]], "alpha": [..], "beta": [..]}`. Exit codes: 0 on
//! success, 1 when a verification or construction fails, 2 on malformed
//! input, 3 on a mathematical precondition violation.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qtorus_cli::formats::ProblemInstance;
use qtorus_cli::ops::{self, IntertwineOutcome, VerifyOpts};
use qtorus_cli::selftest;

#[derive(Parser)]
#[command(name = "qtorus", version, about = "Exact normal forms and simple modules for quantum tori at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Input JSON file; standard input when omitted.
    input: Option<PathBuf>,
    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Also emit dense matrix layouts (dimension at most 64).
    #[arg(long)]
    dense: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Prime for the finite-field generation oracle; must be ≡ 1 (mod m).
    /// Defaults to the smallest such prime.
    #[arg(long)]
    prime: Option<u64>,
    /// Seed for the oracle's random vectors.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random start vectors to spin.
    #[arg(long, default_value_t = 8)]
    trials: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Block-diagonalize H under unimodular congruence and report the invariants.
    NormalForm(InputArgs),
    /// PI degree of the algebra, cross-checked by enumeration on small instances.
    PiDegree(InputArgs),
    /// Generator matrices of the simple module M(alpha).
    Build(MatrixArgs),
    /// Relation, simplicity, and generation checks; exits 1 on any failure.
    Verify(VerifyArgs),
    /// Decide whether M(alpha) and M(beta) are isomorphic.
    Classify(InputArgs),
    /// Construct and verify an intertwiner for an isomorphic pair; exits 1 when none exists.
    Intertwine(MatrixArgs),
    /// Run the embedded corpus of instances with known answers.
    Selftest {
        /// Compact single-line JSON instead of pretty-printed.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] qtorus_core::Error),
    #[error("input error: {0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    fn exit_code(&self) -> i32 {
        match self {
            AppError::Parse(_) | AppError::Io(_) => 2,
            AppError::Core(_) => 3,
        }
    }
}

fn read_instance(path: &Option<PathBuf>) -> Result<ProblemInstance, AppError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit<T: Serialize>(report: &T, compact: bool) -> Result<(), AppError> {
    let text = if compact {
        serde_json::to_string(report)?
    } else {
        serde_json::to_string_pretty(report)?
    };
    println!("{text}");
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32, AppError> {
    match cli.cmd {
        Cmd::NormalForm(a) => {
            let inst = read_instance(&a.input)?;
            emit(&ops::normal_form(&inst)?, a.json)?;
            Ok(0)
        }
        Cmd::PiDegree(a) => {
            let inst = read_instance(&a.input)?;
            emit(&ops::pi_degree_report(&inst)?, a.json)?;
            Ok(0)
        }
        Cmd::Build(a) => {
            let inst = read_instance(&a.io.input)?;
            emit(&ops::build(&inst, a.dense)?, a.io.json)?;
            Ok(0)
        }
        Cmd::Verify(a) => {
            let inst = read_instance(&a.io.input)?;
            let opts = VerifyOpts { prime: a.prime, seed: a.seed, trials: a.trials.max(1) };
            let report = ops::verify(&inst, &opts)?;
            emit(&report, a.io.json)?;
            Ok(if report.ok { 0 } else { 1 })
        }
        Cmd::Classify(a) => {
            let inst = read_instance(&a.input)?;
            emit(&ops::classify(&inst)?, a.json)?;
            Ok(0)
        }
        Cmd::Intertwine(a) => {
            let inst = read_instance(&a.io.input)?;
            match ops::intertwine(&inst, a.dense)? {
                IntertwineOutcome::Built(report) => {
                    emit(&report, a.io.json)?;
                    Ok(0)
                }
                IntertwineOutcome::NotIsomorphic(report) => {
                    emit(&report, a.io.json)?;
                    eprintln!("no intertwiner: the modules are not isomorphic");
                    Ok(1)
                }
            }
        }
        Cmd::Selftest { json } => {
            let report = selftest::run();
            if json {
                emit(&report, true)?;
            } else {
                for case in &report.cases {
                    let status = if case.ok { "ok" } else { "FAILED" };
                    println!("{status} — {}: {}", case.name, case.detail);
                }
                println!("selftest: {} passed, {} failed", report.passed, report.failed);
            }
            Ok(if report.failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
