use std::time::Instant;

use clap::{Args, ValueEnum};
use happy_core::io::{gen_planted, gen_random};
use happy_core::solvers::mhe::{brute_force_mhe, division_mhe, exact_2mhe};
use happy_core::solvers::mhv::{brute_force_mhv, exact_2mhv, greedy_mhv, growth_mhv};
use happy_core::solvers::variants::{greedy_variant, growth_hard_mhv, growth_soft_mhv};
use happy_core::*;

use crate::commands::parse_mode;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Mhv,
    Mhe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenModel {
    Random,
    Planted,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Comma-separated algorithms: greedy,growth,division,exact2,brute,best.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<String>,
    #[arg(long, value_enum, default_value = "random")]
    gen: GenModel,
    /// Generator parameters, comma-separated key=value pairs:
    /// n, k, reveal, p (random) or p_in, p_out (planted).
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle budget for the upper-bound column.
    #[arg(long, default_value_t = 1 << 16)]
    budget: u64,
    /// Happiness mode for MHV: 'strict', 'soft p/q' or 'hard q'.
    #[arg(long, num_args = 1..=2)]
    mode: Option<Vec<String>>,
}

struct Params {
    n: usize,
    k: usize,
    p: f64,
    p_in: f64,
    p_out: f64,
    reveal: f64,
}

fn parse_params(text: &str) -> Result<Params, CliError> {
    let mut params = Params {
        n: 20,
        k: 3,
        p: 0.3,
        p_in: 0.6,
        p_out: 0.1,
        reveal: 0.3,
    };
    for pair in text.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::contract(format!("bad --params entry '{pair}'")))?;
        let parse_f = || {
            value
                .parse::<f64>()
                .map_err(|_| CliError::contract(format!("bad value in '{pair}'")))
        };
        match key {
            "n" => {
                params.n = value
                    .parse()
                    .map_err(|_| CliError::contract(format!("bad value in '{pair}'")))?
            }
            "k" => {
                params.k = value
                    .parse()
                    .map_err(|_| CliError::contract(format!("bad value in '{pair}'")))?
            }
            "p" => params.p = parse_f()?,
            "p_in" => params.p_in = parse_f()?,
            "p_out" => params.p_out = parse_f()?,
            "reveal" => params.reveal = parse_f()?,
            other => return Err(CliError::contract(format!("unknown --params key '{other}'"))),
        }
    }
    Ok(params)
}

pub fn run(args: BenchArgs) -> Result<(), CliError> {
    let params = parse_params(&args.params)?;
    let mode = match &args.mode {
        Some(tokens) => parse_mode(tokens)?,
        None => HappinessMode::Strict,
    };
    if args.problem == Problem::Mhe && mode != HappinessMode::Strict {
        return Err(CliError::contract(
            "happy edges have no threshold modes; drop --mode",
        ));
    }
    if args.algos.is_empty() {
        return Err(CliError::contract("--algos takes at least one algorithm"));
    }
    for algo in &args.algos {
        let valid = match args.problem {
            Problem::Mhv => ["greedy", "growth", "exact2", "brute", "best"].contains(&algo.as_str()),
            Problem::Mhe => ["division", "exact2", "brute", "best"].contains(&algo.as_str()),
        };
        if !valid {
            return Err(CliError::contract(format!(
                "algorithm '{algo}' does not apply to --problem {:?}",
                args.problem
            )));
        }
        if algo == "exact2" && params.k != 2 {
            return Err(CliError::contract("exact2 requires k=2 in --params"));
        }
    }

    println!("instance_id,n,m,k,delta,algo,objective,upper_bound,bound_kind,ratio,wall_millis");
    for instance_id in 0..args.trials {
        let seed = args.seed.wrapping_add(instance_id as u64);
        let (graph, spec) = match args.gen {
            GenModel::Random => gen_random(params.n, params.p, params.k, params.reveal, seed),
            GenModel::Planted => gen_planted(
                params.n,
                params.k,
                params.p_in,
                params.p_out,
                params.reveal,
                seed,
            ),
        };
        let (upper, bound_kind) = upper_bound(&args, &graph, &spec, mode)?;
        for algo in &args.algos {
            let t0 = Instant::now();
            let sol = solve_one(&args, algo, &graph, &spec, mode)?;
            let wall = t0.elapsed().as_secs_f64() * 1000.0;
            let objective = sol.objective.as_weight();
            let ratio = if upper == Weight::from_integer(0) {
                1.0
            } else {
                let r = objective / upper;
                *r.numer() as f64 / *r.denom() as f64
            };
            println!(
                "{instance_id},{},{},{},{},{algo},{},{},{bound_kind},{ratio:.6},{wall:.3}",
                graph.n(),
                graph.m(),
                spec.k(),
                graph.max_degree(),
                format_weight(sol.objective.as_weight()),
                format_weight(upper),
            );
        }
    }
    Ok(())
}

fn format_weight(w: Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Oracle optimum when enumerable within the budget, otherwise the
/// provable upper bound from the run ledgers.
fn upper_bound(
    args: &BenchArgs,
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
) -> Result<(Weight, &'static str), CliError> {
    match args.problem {
        Problem::Mhv => match brute_force_mhv(graph, spec, mode, args.budget) {
            Ok(opt) => Ok((opt.objective.as_weight(), "oracle")),
            Err(SolverError::BudgetExceeded { .. }) => {
                let state = ColoringState::new(graph, spec, mode);
                let h_org = state.happy_count();
                let l_org = state.uncolored_count();
                let lu_org = state.ever_lu_count();
                let d = graph.max_degree();
                let bound = h_org + (d + 1) * (l_org - lu_org);
                Ok((
                    Weight::from_integer(bound.min(graph.n()) as i64),
                    "ledger",
                ))
            }
            Err(e) => Err(CliError::contract(e.to_string())),
        },
        Problem::Mhe => match brute_force_mhe(graph, spec, args.budget) {
            Ok(opt) => Ok((opt.objective.as_weight(), "oracle")),
            Err(SolverError::BudgetExceeded { .. }) => {
                let sol = division_mhe(graph, spec);
                Ok((sol.counters.division().unwrap().bound(), "division"))
            }
            Err(e) => Err(CliError::contract(e.to_string())),
        },
    }
}

fn solve_one(
    args: &BenchArgs,
    algo: &str,
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
) -> Result<Solution, CliError> {
    let refusal = |e: SolverError| match e {
        SolverError::BudgetExceeded { .. } | SolverError::ThresholdTooLarge { .. } => {
            CliError::refusal(e.to_string())
        }
        other => CliError::contract(other.to_string()),
    };
    match (args.problem, algo) {
        (Problem::Mhv, "greedy") => match mode {
            HappinessMode::Strict => Ok(greedy_mhv(graph, spec, mode)),
            _ => greedy_variant(graph, spec, mode).map_err(refusal),
        },
        (Problem::Mhv, "growth") => match mode {
            HappinessMode::Strict => Ok(growth_mhv(graph, spec)),
            HappinessMode::Soft(rho) => growth_soft_mhv(graph, spec, rho).map_err(refusal),
            HappinessMode::Hard(q) => growth_hard_mhv(graph, spec, q).map_err(refusal),
        },
        (Problem::Mhv, "exact2") => exact_2mhv(graph, spec).map_err(refusal),
        (Problem::Mhv, "brute") => brute_force_mhv(graph, spec, mode, args.budget).map_err(refusal),
        (Problem::Mhv, "best") => {
            let greedy = solve_one(args, "greedy", graph, spec, mode)?;
            let growth = solve_one(args, "growth", graph, spec, mode)?;
            let mut best = if growth.objective >= greedy.objective {
                growth
            } else {
                greedy
            };
            if spec.k() == 2 && mode == HappinessMode::Strict {
                let exact = exact_2mhv(graph, spec).map_err(refusal)?;
                if exact.objective >= best.objective {
                    best = exact;
                }
            }
            Ok(best)
        }
        (Problem::Mhe, "division") => Ok(division_mhe(graph, spec)),
        (Problem::Mhe, "exact2") => exact_2mhe(graph, spec).map_err(refusal),
        (Problem::Mhe, "brute") => brute_force_mhe(graph, spec, args.budget).map_err(refusal),
        (Problem::Mhe, "best") => {
            let mut best = division_mhe(graph, spec);
            if spec.k() == 2 {
                let exact = exact_2mhe(graph, spec).map_err(refusal)?;
                if exact.objective >= best.objective {
                    best = exact;
                }
            }
            Ok(best)
        }
        _ => unreachable!("validated above"),
    }
}
