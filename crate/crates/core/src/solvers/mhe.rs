//! Maximum happy edges: the 1/2-approximate division algorithm, the exact
//! two-color solver via contraction + max flow, and the brute-force
//! oracle. All of these handle nonnegative rational edge weights.

use num::rational::Rational64;
use num::Zero;

use crate::flow::{build_2mhe_network, max_flow, Mhe2Build, NodeRef};
use crate::graph::{happy_edge_weight, Color, ColorSpec, Graph, VertexId, Weight};
use crate::solution::{Counters, DivisionCounters, Objective, ProblemKind, Solution};
use crate::solvers::{mhv::enumeration_count, SolverError};

/// Division algorithm: the better of the star-optimal completion and the
/// monochromatic completion.
///
/// `SOL_1` colors every uncolored vertex that has colored neighbors with
/// the color maximizing the weight of its star in the subgraph of edges
/// with exactly one colored endpoint, then fills the rest with color 1.
/// `SOL_2` fills every uncolored vertex with color 1. Ties go to `SOL_1`.
pub fn division_mhe(graph: &Graph, spec: &ColorSpec) -> Solution {
    let n = graph.n();
    let mut w_org = Weight::zero();
    let mut w_dprime = Weight::zero();
    for e in graph.edges() {
        match (spec.color_of(e.u), spec.color_of(e.v)) {
            (Some(cu), Some(cv)) if cu == cv => w_org += e.weight,
            (None, None) => w_dprime += e.weight,
            _ => {}
        }
    }

    let mut incident: Vec<Vec<(VertexId, Weight)>> = vec![Vec::new(); n + 1];
    for e in graph.edges() {
        incident[e.u].push((e.v, e.weight));
        incident[e.v].push((e.u, e.weight));
    }

    // Star step: for each uncolored center, the candidate colors are the
    // colors of its precolored neighbors; pick the one matching the most
    // star weight, smallest color on ties.
    let mut sol1 = vec![0; n + 1];
    for v in 1..=n {
        sol1[v] = spec.color_of(v).unwrap_or(0);
    }
    let mut w_prime = Weight::zero();
    for v in 1..=n {
        if spec.color_of(v).is_some() {
            continue;
        }
        let mut per_color: std::collections::BTreeMap<Color, Weight> =
            std::collections::BTreeMap::new();
        for &(u, w) in &incident[v] {
            if let Some(cu) = spec.color_of(u) {
                *per_color.entry(cu).or_insert_with(Weight::zero) += w;
            }
        }
        let mut best: Option<(Color, Weight)> = None;
        for (&c, &wt) in &per_color {
            if best.map_or(true, |(_, bw)| wt > bw) {
                best = Some((c, wt));
            }
        }
        if let Some((c, wt)) = best {
            sol1[v] = c;
            w_prime += wt;
        } else {
            sol1[v] = 1;
        }
    }
    let sol1_value = happy_edge_weight(graph, &sol1);

    let mut sol2 = vec![0; n + 1];
    for v in 1..=n {
        sol2[v] = spec.color_of(v).unwrap_or(1);
    }
    let sol2_value = happy_edge_weight(graph, &sol2);

    let (coloring, value) = if sol1_value >= sol2_value {
        (sol1, sol1_value)
    } else {
        (sol2, sol2_value)
    };
    Solution::new(
        coloring,
        Objective::EdgeWeight(value),
        ProblemKind::Mhe,
        "division-mhe",
    )
    .with_counters(Counters::Division(DivisionCounters {
        w_org,
        w_prime,
        w_dprime,
    }))
}

/// Exact two-color MHE: contract the two color classes into source and
/// sink, compute a minimum cut, and read the coloring off the cut sides.
/// With an empty color class the instance is degenerate and the
/// monochromatic coloring in the remaining color is optimal.
pub fn exact_2mhe(graph: &Graph, spec: &ColorSpec) -> Result<Solution, SolverError> {
    if spec.k() != 2 {
        return Err(SolverError::RequiresTwoColors(spec.k()));
    }
    let n = graph.n();
    match build_2mhe_network(graph, spec)? {
        Mhe2Build::Degenerate { fill_color } => {
            let mut coloring = vec![0; n + 1];
            for v in 1..=n {
                coloring[v] = spec.color_of(v).unwrap_or(fill_color);
            }
            let value = happy_edge_weight(graph, &coloring);
            debug_assert_eq!(value, graph.total_weight());
            Ok(Solution::new(
                coloring,
                Objective::EdgeWeight(value),
                ProblemKind::Mhe,
                "exact-2mhe",
            ))
        }
        Mhe2Build::Network {
            net,
            node_of,
            scale,
        } => {
            let cut = max_flow(&net);
            let mut coloring = vec![0; n + 1];
            for v in 1..=n {
                coloring[v] = match node_of[v] {
                    NodeRef::Source => 1,
                    NodeRef::Sink => 2,
                    NodeRef::Inner(i) => {
                        if cut.in_source_side(i) {
                            1
                        } else {
                            2
                        }
                    }
                };
            }
            let value = happy_edge_weight(graph, &coloring);
            let cut_weight = Rational64::new(cut.value as i64, scale);
            debug_assert_eq!(value, graph.total_weight() - cut_weight);
            Ok(Solution::new(
                coloring,
                Objective::EdgeWeight(value),
                ProblemKind::Mhe,
                "exact-2mhe",
            ))
        }
    }
}

/// Exhaustive oracle for MHE, maximizing happy edge weight with the same
/// lexicographic tie-break and budget refusal as the MHV oracle.
pub fn brute_force_mhe(
    graph: &Graph,
    spec: &ColorSpec,
    budget: u64,
) -> Result<Solution, SolverError> {
    let k = spec.k();
    let n = graph.n();
    let uncolored: Vec<VertexId> = (1..=n).filter(|&v| spec.color_of(v).is_none()).collect();
    let required = enumeration_count(k, uncolored.len());
    if required > budget as u128 {
        return Err(SolverError::BudgetExceeded { required, budget });
    }
    let mut coloring = vec![0; n + 1];
    for v in 1..=n {
        coloring[v] = spec.color_of(v).unwrap_or(1);
    }
    // Incident weighted edges for the incremental weight updates.
    let mut incident: Vec<Vec<(VertexId, Weight)>> = vec![Vec::new(); n + 1];
    for e in graph.edges() {
        incident[e.u].push((e.v, e.weight));
        incident[e.v].push((e.u, e.weight));
    }
    let mut current = happy_edge_weight(graph, &coloring);
    let mut best_value = current;
    let mut best = coloring.clone();
    let mut digits = vec![1usize; uncolored.len()];
    loop {
        let mut pos = digits.len();
        let advanced = loop {
            if pos == 0 {
                break false;
            }
            pos -= 1;
            let v = uncolored[pos];
            let to = if digits[pos] < k {
                digits[pos] += 1;
                digits[pos]
            } else {
                digits[pos] = 1;
                1
            };
            let from = coloring[v];
            coloring[v] = to;
            for &(u, w) in &incident[v] {
                if coloring[u] == from {
                    current -= w;
                } else if coloring[u] == to {
                    current += w;
                }
            }
            if digits[pos] != 1 {
                break true;
            }
            // carried over; keep borrowing leftward
        };
        if !advanced {
            let objective = happy_edge_weight(graph, &best);
            debug_assert_eq!(objective, best_value);
            return Ok(Solution::new(
                best,
                Objective::EdgeWeight(objective),
                ProblemKind::Mhe,
                "brute-force-mhe",
            ));
        }
        if current > best_value {
            best_value = current;
            best = coloring.clone();
        }
    }
}
