//! Command-line driver: generation, multiplication, simulated parallel
//! runs, performance models, and the kernel-scaling study, all emitting
//! deterministic Matrix Market or CSV outputs.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{model, multiply, scaling, simulate};
use hypersparse::Error;

/// Exit codes: 0 success, 2 usage, 3 input parse error, 4 dimension or
/// grid mismatch, 5 I/O error, 6 other failure.
#[derive(Parser)]
#[command(name = "hypersparse", version, about = "Semiring-generic sparse matrix multiplication toolkit", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic matrix and write it in Matrix Market format.
    Generate(commands::GenerateArgs),
    /// Multiply two matrices sequentially and report flops.
    Multiply(commands::MultiplyArgs),
    /// Run a simulated parallel multiplication and export its ledger.
    Simulate(commands::SimulateArgs),
    /// Evaluate the analytic performance models over a parameter sweep.
    Model(commands::ModelArgs),
    /// Replay submatrix products at increasing grid sizes (kernel scaling).
    Scaling(commands::ScalingArgs),
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 3,
        Error::DimensionMismatch { .. }
        | Error::GridMismatch { .. }
        | Error::NonSquareGrid { .. } => 4,
        Error::Io(_) => 5,
        _ => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::run_generate(args),
        Command::Multiply(args) => multiply::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Model(args) => model::run(args),
        Command::Scaling(args) => scaling::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
