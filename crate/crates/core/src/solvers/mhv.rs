//! Maximum happy vertices: greedy sweep, subset growth, the exact
//! two-color solver and the brute-force oracle.

use crate::flow::{build_2mhv_gadget, max_flow};
use crate::graph::{
    count_happy_vertices, Color, ColorSpec, Graph, HappinessMode, VertexId,
};
use crate::solution::{Counters, Objective, ProblemKind, Solution};
use crate::solvers::{growth::run_growth, SolverError};

pub(crate) fn kind_for_mode(mode: HappinessMode) -> ProblemKind {
    match mode {
        HappinessMode::Strict => ProblemKind::Mhv,
        HappinessMode::Soft(_) => ProblemKind::SoftMhv,
        HappinessMode::Hard(_) => ProblemKind::HardMhv,
    }
}

/// Evaluates the k monochromatic completions and returns the best
/// coloring, its happy-vertex count and the chosen color. Ties go to the
/// smallest color.
pub(crate) fn greedy_sweep(
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
) -> (Vec<Color>, usize) {
    let n = graph.n();
    let mut best: Option<(usize, Vec<Color>)> = None;
    for c in 1..=spec.k() {
        let mut coloring = vec![0; n + 1];
        for v in 1..=n {
            coloring[v] = spec.color_of(v).unwrap_or(c);
        }
        let happy = count_happy_vertices(graph, &coloring, mode);
        if best.as_ref().map_or(true, |(b, _)| happy > *b) {
            best = Some((happy, coloring));
        }
    }
    let (happy, coloring) = best.expect("k >= 1");
    (coloring, happy)
}

/// Colors all uncolored vertices with a single color, trying each of the k
/// colors and keeping the best outcome.
pub fn greedy_mhv(graph: &Graph, spec: &ColorSpec, mode: HappinessMode) -> Solution {
    let (coloring, happy) = greedy_sweep(graph, spec, mode);
    Solution::new(
        coloring,
        Objective::Vertices(happy),
        kind_for_mode(mode),
        "greedy-mhv",
    )
}

/// Subset-growth algorithm for strict MHV.
///
/// Repeatedly completes the cheapest currently satisfiable vertex:
/// P-vertices get all their uncolored neighbors, Lh-vertices join their
/// unique neighboring color with their whole uncolored neighborhood, and
/// doomed Lu-vertices adopt a neighbor's color one at a time. Runs per
/// connected component; components with no precolored vertex are colored
/// monochromatically.
pub fn growth_mhv(graph: &Graph, spec: &ColorSpec) -> Solution {
    let run = run_growth(graph, spec, HappinessMode::Strict);
    Solution::new(
        run.coloring,
        Objective::Vertices(run.happy),
        ProblemKind::Mhv,
        "growth-mhv",
    )
    .with_counters(Counters::Growth(run.counters))
}

/// Exact two-color MHV through the min-cut happiness gadget.
pub fn exact_2mhv(graph: &Graph, spec: &ColorSpec) -> Result<Solution, SolverError> {
    if spec.k() != 2 {
        return Err(SolverError::RequiresTwoColors(spec.k()));
    }
    let n = graph.n();
    if spec.precolored_count() == 0 {
        let coloring: Vec<Color> = std::iter::once(0).chain((1..=n).map(|_| 1)).collect();
        return Ok(Solution::new(
            coloring,
            Objective::Vertices(n),
            ProblemKind::Mhv,
            "exact-2mhv",
        ));
    }
    let gadget = build_2mhv_gadget(graph, spec)?;
    let cut = max_flow(&gadget.net);
    let mut coloring = vec![0; n + 1];
    for v in 1..=n {
        coloring[v] = if cut.in_source_side(gadget.node_of[v]) { 1 } else { 2 };
    }
    for (v, c) in spec.precolored() {
        debug_assert_eq!(coloring[v], c, "pinned vertex crossed the cut");
    }
    let happy = count_happy_vertices(graph, &coloring, HappinessMode::Strict);
    debug_assert_eq!(happy as u64, 2 * n as u64 - cut.value);
    Ok(Solution::new(
        coloring,
        Objective::Vertices(happy),
        ProblemKind::Mhv,
        "exact-2mhv",
    ))
}

/// Number of colorings a brute-force run would enumerate, saturating.
pub fn enumeration_count(k: usize, uncolored: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..uncolored {
        total = match total.checked_mul(k as u128) {
            Some(t) => t,
            None => return u128::MAX,
        };
    }
    total
}

/// Exhaustive oracle for MHV and its threshold variants.
///
/// Enumerates every extension of the precoloring in lexicographic order
/// and returns the first maximizer, so ties break toward the
/// lexicographically smallest coloring vector. Refuses when the
/// enumeration count exceeds `budget`.
pub fn brute_force_mhv(
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
    budget: u64,
) -> Result<Solution, SolverError> {
    let coloring = enumerate_extensions(graph, spec, mode, budget)?;
    let happy = count_happy_vertices(graph, &coloring, mode);
    Ok(Solution::new(
        coloring,
        Objective::Vertices(happy),
        kind_for_mode(mode),
        "brute-force-mhv",
    ))
}

/// Incrementally maintained happy-vertex count for the odometer walk.
struct HappyEval<'g> {
    graph: &'g Graph,
    mode: HappinessMode,
    same: Vec<u32>,
    happy_flags: Vec<bool>,
    happy: usize,
}

impl<'g> HappyEval<'g> {
    fn new(graph: &'g Graph, mode: HappinessMode, coloring: &[Color]) -> Self {
        let n = graph.n();
        let mut same = vec![0u32; n + 1];
        for v in 1..=n {
            same[v] = graph
                .neighbors(v)
                .iter()
                .filter(|&&u| coloring[u] == coloring[v])
                .count() as u32;
        }
        let mut happy_flags = vec![false; n + 1];
        let mut happy = 0;
        for v in 1..=n {
            happy_flags[v] = mode.satisfied(same[v] as usize, graph.degree(v));
            if happy_flags[v] {
                happy += 1;
            }
        }
        HappyEval {
            graph,
            mode,
            same,
            happy_flags,
            happy,
        }
    }

    fn refresh(&mut self, v: VertexId) {
        let now = self
            .mode
            .satisfied(self.same[v] as usize, self.graph.degree(v));
        if now != self.happy_flags[v] {
            self.happy_flags[v] = now;
            if now {
                self.happy += 1;
            } else {
                self.happy -= 1;
            }
        }
    }

    fn recolor(&mut self, coloring: &mut [Color], v: VertexId, to: Color) {
        let from = coloring[v];
        if from == to {
            return;
        }
        coloring[v] = to;
        for i in 0..self.graph.neighbors(v).len() {
            let u = self.graph.neighbors(v)[i];
            if coloring[u] == from {
                self.same[u] -= 1;
                self.same[v] -= 1;
            } else if coloring[u] == to {
                self.same[u] += 1;
                self.same[v] += 1;
            }
            self.refresh(u);
        }
        self.refresh(v);
    }
}

/// Walks all extensions of the precoloring (odometer over the uncolored
/// vertices in ascending id order, colors ascending) and returns the first
/// coloring maximizing the happy-vertex count.
fn enumerate_extensions(
    graph: &Graph,
    spec: &ColorSpec,
    mode: HappinessMode,
    budget: u64,
) -> Result<Vec<Color>, SolverError> {
    let k = spec.k();
    let uncolored: Vec<VertexId> = (1..=graph.n())
        .filter(|&v| spec.color_of(v).is_none())
        .collect();
    let required = enumeration_count(k, uncolored.len());
    if required > budget as u128 {
        return Err(SolverError::BudgetExceeded { required, budget });
    }
    let n = graph.n();
    let mut coloring = vec![0; n + 1];
    for v in 1..=n {
        coloring[v] = spec.color_of(v).unwrap_or(1);
    }
    let mut eval = HappyEval::new(graph, mode, &coloring);
    let mut digits = vec![1usize; uncolored.len()];
    let mut best_score = eval.happy;
    let mut best = coloring.clone();
    loop {
        // Advance the odometer: rightmost digit is least significant, so
        // colorings appear in lexicographic order of the coloring vector.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            if digits[pos] < k {
                digits[pos] += 1;
                eval.recolor(&mut coloring, uncolored[pos], digits[pos]);
                break;
            }
            digits[pos] = 1;
            eval.recolor(&mut coloring, uncolored[pos], 1);
        }
        if eval.happy > best_score {
            best_score = eval.happy;
            best = coloring.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HappinessMode::Strict;

    fn path3_spec() -> (Graph, ColorSpec) {
        let g = Graph::new(3, &[(1, 2), (2, 3)]).unwrap();
        let spec = ColorSpec::new(2, 3, &[(1, 1), (3, 2)]).unwrap();
        (g, spec)
    }

    #[test]
    fn greedy_on_precolored_path() {
        let (g, spec) = path3_spec();
        let sol = greedy_mhv(&g, &spec, Strict);
        assert_eq!(sol.objective, Objective::Vertices(1));
        // Both candidates tie at 1; smallest color wins.
        assert_eq!(sol.coloring[2], 1);
    }

    #[test]
    fn greedy_on_empty_precoloring_is_monochromatic() {
        let g = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let spec = ColorSpec::empty(3, 4).unwrap();
        let sol = greedy_mhv(&g, &spec, Strict);
        assert_eq!(sol.objective, Objective::Vertices(4));
    }

    #[test]
    fn greedy_star_objective_two() {
        let g = Graph::new(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        let spec = ColorSpec::new(2, 4, &[(1, 1), (2, 1), (3, 2)]).unwrap();
        let sol = greedy_mhv(&g, &spec, Strict);
        assert_eq!(sol.objective, Objective::Vertices(2));
    }

    #[test]
    fn growth_star_colors_center_first_leafs_color() {
        let g = Graph::new(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        let spec = ColorSpec::new(2, 4, &[(1, 1), (2, 1), (3, 2)]).unwrap();
        let sol = growth_mhv(&g, &spec);
        assert_eq!(sol.objective, Objective::Vertices(2));
        assert_eq!(sol.coloring[4], 1);
        let c = sol.counters.growth().unwrap();
        assert_eq!(c.h_org, 0);
        assert_eq!(c.h_new, 2);
        assert_eq!(c.l_org, 1);
    }

    #[test]
    fn growth_pendant_is_lh() {
        // p(1) - q(2) with pendant r on q: r is Lh and adopts q's color.
        let g = Graph::new(3, &[(1, 2), (2, 3)]).unwrap();
        let spec = ColorSpec::new(2, 3, &[(1, 1), (2, 2)]).unwrap();
        let sol = growth_mhv(&g, &spec);
        assert_eq!(sol.objective, Objective::Vertices(1));
        assert_eq!(sol.coloring[3], 2);
        assert_eq!(sol.counters.growth().unwrap().lh_steps, 1);
    }

    #[test]
    fn growth_lu_triangle_takes_lowest_id_neighbor_color() {
        let g = Graph::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let spec = ColorSpec::new(2, 3, &[(1, 1), (2, 2)]).unwrap();
        let sol = growth_mhv(&g, &spec);
        assert_eq!(sol.objective, Objective::Vertices(0));
        assert_eq!(sol.coloring[3], 1);
        assert_eq!(sol.counters.growth().unwrap().lu_steps, 1);
    }

    #[test]
    fn growth_empty_precoloring_all_happy() {
        let g = Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let spec = ColorSpec::empty(3, 5).unwrap();
        let sol = growth_mhv(&g, &spec);
        assert_eq!(sol.objective, Objective::Vertices(5));
    }

    #[test]
    fn growth_disconnected_components_are_independent() {
        // Component {1,2} precolored conflicting; component {3,4,5} free.
        let g = Graph::new(5, &[(1, 2), (3, 4), (4, 5)]).unwrap();
        let spec = ColorSpec::new(2, 5, &[(1, 1), (2, 2)]).unwrap();
        let sol = growth_mhv(&g, &spec);
        assert_eq!(sol.objective, Objective::Vertices(3));
        assert_eq!(&sol.coloring[3..=5], &[1, 1, 1]);
    }

    #[test]
    fn exact_2mhv_path() {
        let (g, spec) = path3_spec();
        let sol = exact_2mhv(&g, &spec).unwrap();
        assert_eq!(sol.objective, Objective::Vertices(1));
    }

    #[test]
    fn exact_2mhv_fully_precolored() {
        let g = Graph::new(3, &[(1, 2), (2, 3)]).unwrap();
        let spec = ColorSpec::new(2, 3, &[(1, 1), (2, 1), (3, 1)]).unwrap();
        let sol = exact_2mhv(&g, &spec).unwrap();
        assert_eq!(sol.objective, Objective::Vertices(3));
    }

    #[test]
    fn exact_2mhv_four_cycle_opposite_precolor() {
        // Brute force over the 4 free colorings: giving both free vertices
        // color 1 makes the pinned color-1 vertex happy, so the optimum
        // is 1.
        let g = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let spec = ColorSpec::new(2, 4, &[(1, 1), (3, 2)]).unwrap();
        let opt = brute_force_mhv(&g, &spec, Strict, 16).unwrap();
        assert_eq!(opt.objective, Objective::Vertices(1));
        let sol = exact_2mhv(&g, &spec).unwrap();
        assert_eq!(sol.objective, opt.objective);
    }

    #[test]
    fn exact_2mhv_rejects_other_k() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let spec = ColorSpec::empty(3, 2).unwrap();
        assert_eq!(
            exact_2mhv(&g, &spec).unwrap_err(),
            SolverError::RequiresTwoColors(3)
        );
    }

    #[test]
    fn brute_force_path() {
        let (g, spec) = path3_spec();
        let sol = brute_force_mhv(&g, &spec, Strict, 1 << 20).unwrap();
        assert_eq!(sol.objective, Objective::Vertices(1));
    }

    #[test]
    fn brute_force_triangle() {
        let g = Graph::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let spec = ColorSpec::new(2, 3, &[(1, 1), (2, 2)]).unwrap();
        let sol = brute_force_mhv(&g, &spec, Strict, 1 << 20).unwrap();
        assert_eq!(sol.objective, Objective::Vertices(0));
    }

    #[test]
    fn brute_force_fully_precolored() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let spec = ColorSpec::new(2, 2, &[(1, 1), (2, 1)]).unwrap();
        let sol = brute_force_mhv(&g, &spec, Strict, 4).unwrap();
        assert_eq!(sol.objective, Objective::Vertices(2));
    }

    #[test]
    fn brute_force_budget_refusal() {
        let g = Graph::new(20, &[]).unwrap();
        let spec = ColorSpec::empty(3, 20).unwrap();
        let err = brute_force_mhv(&g, &spec, Strict, 1000).unwrap_err();
        assert_eq!(
            err,
            SolverError::BudgetExceeded {
                required: 3u128.pow(20),
                budget: 1000
            }
        );
    }

    #[test]
    fn brute_force_ties_break_lexicographically() {
        // Single free vertex, no edges: both colors give the same count;
        // color 1 must win.
        let g = Graph::new(1, &[]).unwrap();
        let spec = ColorSpec::empty(2, 1).unwrap();
        let sol = brute_force_mhv(&g, &spec, Strict, 10).unwrap();
        assert_eq!(sol.coloring[1], 1);
    }
}
