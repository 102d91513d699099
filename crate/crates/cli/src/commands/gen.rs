use std::path::PathBuf;

use clap::{Args, Subcommand};
use happy_core::io::{gen_planted, gen_random, write_instance};
use happy_core::HappinessMode;

use crate::CliError;

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    model: Model,
}

#[derive(Subcommand)]
enum Model {
    /// Erdos-Renyi edges, uniform precolors.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        k: usize,
        /// Fraction of vertices precolored.
        #[arg(long, default_value_t = 0.0)]
        reveal: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Planted partition: k balanced groups, dense inside, sparse across.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[arg(long, default_value_t = 0.0)]
        reveal: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

pub fn run(args: GenArgs) -> Result<(), CliError> {
    let (text, out) = match args.model {
        Model::Random {
            n,
            p,
            k,
            reveal,
            seed,
            out,
        } => {
            validate_prob(p, "--p")?;
            validate_prob(reveal, "--reveal")?;
            if k == 0 {
                return Err(CliError::contract("--k must be at least 1"));
            }
            let (graph, spec) = gen_random(n, p, k, reveal, seed);
            (write_instance(&graph, &spec, HappinessMode::Strict), out)
        }
        Model::Planted {
            n,
            k,
            p_in,
            p_out,
            reveal,
            seed,
            out,
        } => {
            validate_prob(p_in, "--p-in")?;
            validate_prob(p_out, "--p-out")?;
            validate_prob(reveal, "--reveal")?;
            if k == 0 {
                return Err(CliError::contract("--k must be at least 1"));
            }
            if p_in < p_out {
                return Err(CliError::contract("planted model needs p_in >= p_out"));
            }
            let (graph, spec) = gen_planted(n, k, p_in, p_out, reveal, seed);
            (write_instance(&graph, &spec, HappinessMode::Strict), out)
        }
    };
    match out {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| CliError::contract(format!("{}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn validate_prob(p: f64, what: &str) -> Result<(), CliError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(CliError::contract(format!("{what} must lie in [0, 1]")))
    }
}
