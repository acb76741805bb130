use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use adiabatic_cli::report::{self, RunOptions};
use adiabatic_cli::{MaxOrder, ProblemSpec};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

const EXIT_INPUT: u8 = 1;
const EXIT_CROSSCHECK: u8 = 2;

/// Adiabatic Donaldson-Futaki expansions for subbundle test configurations
/// on projective bundles over a surface.
#[derive(Parser)]
#[command(name = "adiabatic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full run: expansion coefficients, verdicts and h^1(S ⊗ Q*).
    Df(Common),
    /// Riemann-Roch only.
    Chi(Common),
    /// Slopes only.
    Slope(Common),
    /// Engine versus closed-form coefficients only.
    Crosscheck(Common),
}

#[derive(Args)]
struct Common {
    /// Problem description (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Highest coefficient index the verdict may inspect, or "all".
    #[arg(long)]
    max_order: Option<MaxOrder>,
    /// Compare against the closed forms and exit with 2 on a mismatch.
    #[arg(long)]
    crosscheck: bool,
}

fn emit<T: Serialize>(doc: &T, output: Option<&PathBuf>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let (Command::Df(common) | Command::Chi(common) | Command::Slope(common) | Command::Crosscheck(common)) =
        &cli.command;
    let text = fs::read_to_string(&common.input)
        .map_err(|e| format!("cannot read {}: {e}", common.input.display()))?;
    let problem = ProblemSpec::parse(&text).map_err(|violations| {
        violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    let mut options = RunOptions::from(&problem.spec.options);
    if let Some(m) = common.max_order {
        options.max_order = m;
    }
    options.crosscheck |= common.crosscheck;
    let output = common.output.as_ref();
    let engine = |e: adiabatic_core::Error| e.to_string();
    match &cli.command {
        Command::Df(_) => {
            let doc = report::df(&problem, options).map_err(engine)?;
            emit(&doc, output)?;
            Ok(!options.crosscheck || doc.crosscheck_passed())
        }
        Command::Chi(_) => {
            emit(&report::chi(&problem, options).map_err(engine)?, output)?;
            Ok(true)
        }
        Command::Slope(_) => {
            emit(&report::slope(&problem).map_err(engine)?, output)?;
            Ok(true)
        }
        Command::Crosscheck(_) => {
            let doc = report::crosscheck_only(&problem).map_err(engine)?;
            emit(&doc, output)?;
            Ok(doc.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("crosscheck mismatch: engine and closed-form coefficients disagree");
            ExitCode::from(EXIT_CROSSCHECK)
        }
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
