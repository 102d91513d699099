//! `happy`: solve, verify, reduce, generate and benchmark happy-coloring
//! instances.
//!
//! Exit codes: 0 success, 1 parse or contract error, 2 refusal (oracle
//! budget exceeded, infeasible hard threshold without --force), 3 property
//! suite failure.

mod commands;

use clap::{Parser, Subcommand};

use commands::{bench, gen, reduce, solve, verify};

#[derive(Parser)]
#[command(name = "happy", version, about = "Happy vertices / happy edges solver toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with a chosen algorithm.
    Solve(solve::SolveArgs),
    /// Run a property suite over generated instances.
    Verify(verify::VerifyArgs),
    /// Build a hardness reduction from a source instance file.
    Reduce(reduce::ReduceArgs),
    /// Generate a random instance file.
    Gen(gen::GenArgs),
    /// Compare algorithms over generated instances, CSV on stdout.
    Bench(bench::BenchArgs),
}

/// An error with the exit code it maps to.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn contract(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn refusal(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn suite(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Reduce(args) => reduce::run(args),
        Command::Gen(args) => gen::run(args),
        Command::Bench(args) => bench::run(args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
