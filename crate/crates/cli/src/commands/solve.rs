use std::path::PathBuf;

use clap::{Args, ValueEnum};
use happy_core::io::{parse_instance, permute_instance, unpermute_coloring};
use happy_core::solvers::mhe::{brute_force_mhe, division_mhe, exact_2mhe};
use happy_core::solvers::mhv::{brute_force_mhv, exact_2mhv, greedy_mhv, growth_mhv};
use happy_core::solvers::variants::{
    greedy_variant, growth_hard_mhv, growth_hard_mhv_forced, growth_soft_mhv,
};
use happy_core::*;

use crate::commands::{mode_label, parse_mode};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Mhv,
    Mhe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Greedy,
    Growth,
    Division,
    Exact2,
    Brute,
    Best,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Objective: happy vertices or happy edges.
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Happiness mode override: 'strict', 'soft p/q' or 'hard q'
    /// (default: the instance file's mode line).
    #[arg(long, num_args = 1..=2)]
    mode: Option<Vec<String>>,
    /// Permute vertex ids with this seed to randomize tie-breaking.
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration budget for the brute-force oracle.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Print the full coloring.
    #[arg(long)]
    emit_coloring: bool,
    /// Run the hard-threshold growth even when q exceeds the maximum
    /// degree.
    #[arg(long)]
    force: bool,
    file: PathBuf,
}

pub fn run(args: SolveArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::contract(format!("{}: {e}", args.file.display())))?;
    let (graph, spec, file_mode) =
        parse_instance(&text).map_err(|e| CliError::contract(e.to_string()))?;
    let mode = match &args.mode {
        Some(tokens) => parse_mode(tokens)?,
        None => file_mode,
    };

    // Tie-breaking is by vertex id; an explicit seed relabels the instance
    // first and maps the coloring back afterwards.
    let (graph, spec, perm) = match args.seed {
        Some(seed) => {
            let (g, s, p) = permute_instance(&graph, &spec, seed);
            (g, s, Some(p))
        }
        None => (graph, spec, None),
    };

    let mut solution = dispatch(&args, &graph, &spec, mode)?;
    if let Some(perm) = &perm {
        solution.coloring = unpermute_coloring(&solution.coloring, perm);
    }

    // Re-validate the reported objective through the evaluators before
    // printing. The permutation does not change objectives, so evaluate on
    // the solver's view.
    let check = match solution.kind {
        ProblemKind::Mhe => Objective::EdgeWeight(happy_edge_weight(
            &graph,
            &perm
                .as_ref()
                .map(|p| permute_back_view(&solution.coloring, p))
                .unwrap_or_else(|| solution.coloring.clone()),
        )),
        _ => Objective::Vertices(count_happy_vertices(
            &graph,
            &perm
                .as_ref()
                .map(|p| permute_back_view(&solution.coloring, p))
                .unwrap_or_else(|| solution.coloring.clone()),
            mode,
        )),
    };
    assert_eq!(
        check, solution.objective,
        "reported objective failed re-validation"
    );

    println!("problem {}", solution.kind);
    println!("mode {}", mode_label(mode));
    println!("algorithm {}", solution.algorithm);
    println!("objective {}", solution.objective);
    match &solution.counters {
        Counters::Growth(c) => println!(
            "counters H_org={} H_new={} L_org={} Lu_org={} Lu_new={} P_steps={} Lh_steps={} Lu_steps={} max_Lu_P={} max_Lu_Lh={} max_Lu_Lu={}",
            c.h_org,
            c.h_new,
            c.l_org,
            c.lu_org,
            c.lu_new,
            c.p_steps,
            c.lh_steps,
            c.lu_steps,
            c.max_lu_per_p_step,
            c.max_lu_per_lh_step,
            c.max_lu_per_lu_step
        ),
        Counters::Division(c) => println!(
            "counters W_org={} W_prime={} W_dprime={} bound={}",
            format_weight(c.w_org),
            format_weight(c.w_prime),
            format_weight(c.w_dprime),
            format_weight(c.bound())
        ),
        Counters::None => {}
    }
    if args.emit_coloring {
        let body: Vec<String> = solution.coloring[1..].iter().map(|c| c.to_string()).collect();
        println!("coloring {}", body.join(" "));
    }
    Ok(())
}

/// The coloring as seen by the (possibly permuted) solver instance.
fn permute_back_view(coloring: &[Color], perm: &[VertexId]) -> Vec<Color> {
    let mut view = vec![0; coloring.len()];
    for v in 1..perm.len() {
        view[perm[v]] = coloring[v];
    }
    view
}

fn format_weight(w: Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

fn dispatch(
    args: &SolveArgs,
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
) -> Result<Solution, CliError> {
    let strict = mode == HappinessMode::Strict;
    match (args.problem, args.algo) {
        (Problem::Mhv, Algo::Greedy) => match mode {
            HappinessMode::Strict => Ok(greedy_mhv(graph, spec, mode)),
            _ => greedy_variant(graph, spec, mode).map_err(solver_err),
        },
        (Problem::Mhv, Algo::Growth) => match mode {
            HappinessMode::Strict => Ok(growth_mhv(graph, spec)),
            HappinessMode::Soft(rho) => growth_soft_mhv(graph, spec, rho).map_err(solver_err),
            HappinessMode::Hard(q) => {
                if args.force {
                    growth_hard_mhv_forced(graph, spec, q).map_err(solver_err)
                } else {
                    growth_hard_mhv(graph, spec, q).map_err(solver_err)
                }
            }
        },
        (Problem::Mhv, Algo::Exact2) => {
            if !strict {
                return Err(CliError::contract(
                    "exact2 solves strict MHV only; drop --mode",
                ));
            }
            if spec.k() != 2 {
                return Err(CliError::contract("exact2 requires k=2"));
            }
            exact_2mhv(graph, spec).map_err(solver_err)
        }
        (Problem::Mhv, Algo::Brute) => {
            brute_force_mhv(graph, spec, mode, args.budget).map_err(solver_err)
        }
        (Problem::Mhv, Algo::Best) => {
            let greedy = match mode {
                HappinessMode::Strict => greedy_mhv(graph, spec, mode),
                _ => greedy_variant(graph, spec, mode).map_err(solver_err)?,
            };
            let growth = match mode {
                HappinessMode::Strict => growth_mhv(graph, spec),
                HappinessMode::Soft(rho) => growth_soft_mhv(graph, spec, rho).map_err(solver_err)?,
                HappinessMode::Hard(q) => {
                    if args.force {
                        growth_hard_mhv_forced(graph, spec, q).map_err(solver_err)?
                    } else {
                        growth_hard_mhv(graph, spec, q).map_err(solver_err)?
                    }
                }
            };
            let mut best = if growth.objective >= greedy.objective {
                growth
            } else {
                greedy
            };
            if strict && spec.k() == 2 {
                let exact = exact_2mhv(graph, spec).map_err(solver_err)?;
                if exact.objective >= best.objective {
                    best = exact;
                }
            }
            best.algorithm = format!("best({})", best.algorithm);
            Ok(best)
        }
        (Problem::Mhe, Algo::Division) => {
            require_strict_for_mhe(mode)?;
            Ok(division_mhe(graph, spec))
        }
        (Problem::Mhe, Algo::Exact2) => {
            require_strict_for_mhe(mode)?;
            if spec.k() != 2 {
                return Err(CliError::contract("exact2 requires k=2"));
            }
            exact_2mhe(graph, spec).map_err(solver_err)
        }
        (Problem::Mhe, Algo::Brute) => {
            require_strict_for_mhe(mode)?;
            brute_force_mhe(graph, spec, args.budget).map_err(solver_err)
        }
        (Problem::Mhe, Algo::Best) => {
            require_strict_for_mhe(mode)?;
            let mut best = division_mhe(graph, spec);
            if spec.k() == 2 {
                let exact = exact_2mhe(graph, spec).map_err(solver_err)?;
                if exact.objective >= best.objective {
                    best = exact;
                }
            }
            best.algorithm = format!("best({})", best.algorithm);
            Ok(best)
        }
        (Problem::Mhe, Algo::Greedy) => Err(CliError::contract(
            "greedy solves MHV; use --problem mhv or --algo division",
        )),
        (Problem::Mhe, Algo::Growth) => Err(CliError::contract(
            "growth solves MHV; use --problem mhv or --algo division",
        )),
        (Problem::Mhv, Algo::Division) => Err(CliError::contract(
            "division solves MHE; use --problem mhe",
        )),
    }
}

fn require_strict_for_mhe(mode: HappinessMode) -> Result<(), CliError> {
    if mode == HappinessMode::Strict {
        Ok(())
    } else {
        Err(CliError::contract(
            "happy edges have no threshold modes; drop --mode",
        ))
    }
}

fn solver_err(e: SolverError) -> CliError {
    match e {
        SolverError::BudgetExceeded { .. } | SolverError::ThresholdTooLarge { .. } => {
            CliError::refusal(e.to_string())
        }
        other => CliError::contract(other.to_string()),
    }
}
