//! `luce`: batch analysis of choice datasets.
//!
//! Every command prints a JSON report (sorted keys, rationals as `"n/d"`) on
//! stdout and a short summary on stderr. Exit codes: 0 ok, 1 an `--assert`
//! failed, 2 bad input, 3 unmet precondition, 4 internal inconsistency.

mod assertions;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use luce_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "luce",
    version,
    about = "Exact analysis of choice correspondences and logit rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Gate {
    /// Require a report field: `path.to.field` (must be true) or `path=value`.
    #[arg(long = "assert", value_name = "CHECK")]
    pub checks: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All seven axioms with witnesses, plus acyclicity of R, Q and S.
    Axioms {
        file: PathBuf,
        #[command(flatten)]
        gate: Gate,
    },
    /// Regularity of logit rules built on the dataset.
    Regularity {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RegularityMode::Uniform)]
        mode: RegularityMode,
        /// Also evaluate this utility: JSON `{label: "n/d"}` or `@file`.
        #[arg(long)]
        utility: Option<String>,
        #[command(flatten)]
        gate: Gate,
    },
    /// Classifies regularity violations as welfare increasing or decreasing.
    Overload {
        file: PathBuf,
        /// JSON `{label: "n/d"}` or `@file`; must be aligned with R.
        #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
        utility: Option<String>,
        /// Use `2^i` along the smallest extension of R.
        #[arg(long)]
        auto: bool,
        #[command(flatten)]
        gate: Gate,
    },
    /// Builds a representation of the dataset.
    Represent {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        #[command(flatten)]
        gate: Gate,
    },
    /// Brute-force verification of a result on small ground sets.
    Oracle {
        /// Theorem id (e.g. T3, P1_uniform) or `all`.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Enumerate all datasets at n = 4 instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count when sampling.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        gate: Gate,
    },
    /// Prints the dataset in canonical form.
    Fmt { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    /// Some R-aligned logit rule is regular (constructive witness).
    Exists,
    /// Every R-aligned logit rule is regular (or a counterexample).
    All,
    /// The uniform rule.
    Uniform,
    /// Any regular logit rule, by Fourier-Motzkin elimination.
    Feasibility,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    ConcaveThreshold,
    Semiorder,
    Lam,
}

/// A finished analysis: the report body plus stderr lines.
pub struct Outcome {
    pub dataset: Option<Value>,
    pub result: Value,
    pub summary: Vec<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PartialDataset
        | Error::CyclicRelation { .. }
        | Error::Misaligned { .. }
        | Error::VariableLimit { .. }
        | Error::EnumerationTooLarge(_) => 3,
        Error::Inconsistent(_) | Error::CoverageGap { .. } | Error::UnverifiedRepresentation => 4,
        _ => 2,
    }
}

fn emit(report: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("json values serialize")
    );
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let (name, gate, run): (&str, Gate, Box<dyn FnOnce() -> luce_core::Result<Outcome>>) =
        match cli.command {
            Command::Fmt { file } => {
                return match commands::load(&file) {
                    Ok(c) => {
                        print!("{}", c.to_text());
                        ExitCode::SUCCESS
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(exit_code(&e))
                    }
                };
            }
            Command::Axioms { file, gate } => {
                ("axioms", gate, Box::new(move || commands::axioms(&file)))
            }
            Command::Regularity {
                file,
                mode,
                utility,
                gate,
            } => (
                "regularity",
                gate,
                Box::new(move || commands::regularity(&file, mode, utility.as_deref())),
            ),
            Command::Overload {
                file,
                utility,
                auto: _,
                gate,
            } => (
                "overload",
                gate,
                Box::new(move || commands::overload(&file, utility.as_deref())),
            ),
            Command::Represent { file, target, gate } => (
                "represent",
                gate,
                Box::new(move || commands::represent(&file, target)),
            ),
            Command::Oracle {
                theorem,
                n,
                exhaustive,
                seed,
                budget,
                gate,
            } => (
                "oracle",
                gate,
                Box::new(move || commands::oracle(&theorem, n, exhaustive, seed, budget)),
            ),
        };

    let outcome = match run() {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e}");
            emit(&json!({
                "command": name,
                "args": argv,
                "error": { "message": e.to_string(), "kind": format!("{e:?}").split([' ', '(', '{']).next() },
                "exit_code": code,
            }));
            return ExitCode::from(code);
        }
    };

    let checks = match assertions::evaluate(&outcome.result, &gate.checks) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            emit(
                &json!({ "command": name, "args": argv, "error": { "message": msg, "kind": "Assertion" }, "exit_code": 2 }),
            );
            return ExitCode::from(2);
        }
    };
    let failed = checks.iter().filter(|c| !c.passed).count();
    let code: u8 = if failed > 0 { 1 } else { 0 };
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    for c in checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "assert failed: {} (expected {}, found {})",
            c.check, c.expected, c.actual
        );
    }
    emit(&json!({
        "command": name,
        "args": argv,
        "dataset": outcome.dataset,
        "result": outcome.result,
        "assertions": checks.iter().map(assertions::Check::to_json).collect::<Vec<_>>(),
        "exit_code": code,
    }));
    ExitCode::from(code)
}
