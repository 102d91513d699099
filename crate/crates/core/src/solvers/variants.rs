//! Growth and greedy algorithms for the soft- and hard-threshold variants
//! of the happy-vertices problem.

use num::rational::Rational64;
use num::{One, Zero};

use crate::graph::{ColorSpec, Graph, HappinessMode};
use crate::solution::{Counters, Objective, ProblemKind, Solution};
use crate::solvers::growth::run_growth;
use crate::solvers::mhv::{greedy_sweep, kind_for_mode};
use crate::solvers::SolverError;

/// Subset growth under the soft threshold: a P- or Lh-step colors exactly
/// the deficit `ceil(rho * deg(v)) - |N^s(v)|` of uncolored neighbors
/// (smallest ids first), an Lu-step colors the one doomed vertex with the
/// color of its smallest colored neighbor.
pub fn growth_soft_mhv(
    graph: &Graph,
    spec: &ColorSpec,
    rho: Rational64,
) -> Result<Solution, SolverError> {
    if rho <= Rational64::zero() || rho >= Rational64::one() {
        return Err(SolverError::SoftThresholdOutOfRange(rho.to_string()));
    }
    let mode = HappinessMode::Soft(rho);
    let run = run_growth(graph, spec, mode);
    Ok(Solution::new(
        run.coloring,
        Objective::Vertices(run.happy),
        ProblemKind::SoftMhv,
        "growth-soft-mhv",
    )
    .with_counters(Counters::Growth(run.counters)))
}

/// Subset growth under the hard threshold.
///
/// Refuses `q > max_degree` (no vertex could ever be happy); use
/// [`growth_hard_mhv_forced`] to run anyway.
pub fn growth_hard_mhv(
    graph: &Graph,
    spec: &ColorSpec,
    q: usize,
) -> Result<Solution, SolverError> {
    if q > graph.max_degree() {
        return Err(SolverError::ThresholdTooLarge {
            q,
            max_degree: graph.max_degree(),
        });
    }
    growth_hard_mhv_forced(graph, spec, q)
}

/// Hard-threshold growth without the `q <= max_degree` feasibility check.
pub fn growth_hard_mhv_forced(
    graph: &Graph,
    spec: &ColorSpec,
    q: usize,
) -> Result<Solution, SolverError> {
    if q == 0 {
        return Err(SolverError::ThresholdZero);
    }
    let mode = HappinessMode::Hard(q);
    let run = run_growth(graph, spec, mode);
    Ok(Solution::new(
        run.coloring,
        Objective::Vertices(run.happy),
        ProblemKind::HardMhv,
        "growth-hard-mhv",
    )
    .with_counters(Counters::Growth(run.counters)))
}

/// The k-candidate monochromatic sweep evaluated under a threshold mode.
pub fn greedy_variant(
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
) -> Result<Solution, SolverError> {
    match mode {
        HappinessMode::Strict => {}
        HappinessMode::Soft(rho) => {
            if rho <= Rational64::zero() || rho >= Rational64::one() {
                return Err(SolverError::SoftThresholdOutOfRange(rho.to_string()));
            }
        }
        HappinessMode::Hard(q) => {
            if q == 0 {
                return Err(SolverError::ThresholdZero);
            }
        }
    }
    let (coloring, happy) = greedy_sweep(graph, spec, mode);
    Ok(Solution::new(
        coloring,
        Objective::Vertices(happy),
        kind_for_mode(mode),
        "greedy-variant",
    ))
}
