use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pvp_core::cli::{run, Command, RunOptions};
use pvp_core::Limits;

/// Exact prolongation, jet-group and component computations for
/// difference-differential linear systems.
#[derive(Parser, Debug)]
#[command(name = "pvp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Input JSON: a file path, `-` for stdin, or inline JSON.
    #[arg(long, global = true, env = "PVP_INPUT")]
    input: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "PVP_OUTPUT")]
    output: Option<PathBuf>,

    /// Largest prolongation or jet order accepted.
    #[arg(long, global = true, env = "PVP_ORDER", default_value_t = Limits::default().max_order)]
    order: usize,

    /// Maximum S-polynomial reductions per Gröbner basis.
    #[arg(long, global = true, env = "PVP_BUDGET", default_value_t = Limits::default().groebner_budget)]
    budget: usize,

    /// Seed for sampled checks.
    #[arg(long, global = true, env = "PVP_SEED", default_value_t = 0)]
    seed: u64,

    /// Worker threads for independent checks (0: one per core).
    #[arg(long, global = true, env = "PVP_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Build the prolonged block system of order n.
    Prolong,
    /// Check the fundamental block solution and the Leibniz closed form.
    Verify,
    /// Twisted σ-power product and its cocycle law.
    Compose,
    /// Jet products, inverses and the block embedding.
    Jets,
    /// Whether a constant jet preserves an ideal of jet polynomials.
    CheckInvariance,
    /// σ-orbits of the primitive idempotents of a monomial model.
    Components,
    /// Exhaustive check of the component exact sequence of a model.
    ExactSeq,
    /// Run the full invariant suite.
    Selftest,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Prolong => Command::Prolong,
            Sub::Verify => Command::Verify,
            Sub::Compose => Command::Compose,
            Sub::Jets => Command::Jets,
            Sub::CheckInvariance => Command::CheckInvariance,
            Sub::Components => Command::Components,
            Sub::ExactSeq => Command::ExactSeq,
            Sub::Selftest => Command::Selftest,
        }
    }
}

fn read_input(source: Option<&str>) -> io::Result<String> {
    match source {
        None | Some("-") => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => fs::read_to_string(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = Command::from(cli.command);
    let options = RunOptions {
        limits: Limits {
            max_order: cli.order,
            groebner_budget: cli.budget,
            ..Limits::default()
        },
        seed: cli.seed,
        jobs: cli.jobs,
    };

    let input = if command.needs_input() {
        match read_input(cli.input.as_deref()) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("pvp: cannot read input: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        None
    };

    let report = run(command, input.as_deref(), &options);
    let json = report.to_json();
    let written = match &cli.output {
        Some(path) => fs::write(path, &json),
        None => io::stdout().write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("pvp: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
