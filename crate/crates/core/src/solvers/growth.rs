//! Shared subset-growth driver.
//!
//! All three growth algorithms run the same loop: while uncolored vertices
//! remain, satisfy a P-vertex if one exists, otherwise complete an
//! Lh-vertex, otherwise write off an Lu-vertex. They differ only in how
//! many neighbors a step colors and how the step's color is chosen, which
//! is dictated by the happiness mode.
//!
//! Components without any precolored vertex are filled monochromatically
//! with color 1 up front; the loop then runs per component, which
//! guarantees an Lu-vertex exists whenever the P- and Lh-queues are empty.
//! Ties ("any" choices) always resolve to the smallest vertex id or the
//! smallest color.

use std::collections::BTreeSet;

use crate::graph::{Color, ColorSpec, Graph, HappinessMode, VertexId};
use crate::solution::GrowthCounters;
use crate::state::{ColoringState, VertexType};

pub(crate) struct GrowthRun {
    pub coloring: Vec<Color>,
    pub happy: usize,
    pub counters: GrowthCounters,
}

enum StepKind {
    P,
    Lh,
    Lu,
}

/// `ceil(rho * deg)` in exact integer arithmetic.
fn ceil_threshold(mode: HappinessMode, deg: usize) -> usize {
    match mode {
        HappinessMode::Strict => deg,
        HappinessMode::Soft(rho) => {
            let num = *rho.numer() as i128 * deg as i128;
            let den = *rho.denom() as i128;
            ((num + den - 1) / den) as usize
        }
        HappinessMode::Hard(q) => q,
    }
}

pub(crate) fn run_growth(graph: &Graph, spec: &ColorSpec, mode: HappinessMode) -> GrowthRun {
    let n = graph.n();
    let mut state = ColoringState::new(graph, spec, mode);
    let h_org = state.happy_count();
    let l_org = state.uncolored_count();
    let lu_org = state.ever_lu_count();

    let comps = graph.components();
    let mut comp_of = vec![0usize; n + 1];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }

    // Per-component queues of live P-, Lh- and Lu-vertices, kept in sync
    // with the state through the changed-vertex lists.
    let mut queues: Vec<[BTreeSet<VertexId>; 3]> = (0..comps.len())
        .map(|_| [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()])
        .collect();
    for v in 1..=n {
        if let Some(slot) = queue_slot(state.vertex_type(v)) {
            queues[comp_of[v]][slot].insert(v);
        }
    }

    let mut counters = GrowthCounters {
        h_org,
        l_org,
        lu_org,
        ..GrowthCounters::default()
    };

    let sync = |queues: &mut Vec<[BTreeSet<VertexId>; 3]>,
                state: &ColoringState,
                changed: &[VertexId]| {
        for &w in changed {
            let q = &mut queues[comp_of[w]];
            q[0].remove(&w);
            q[1].remove(&w);
            q[2].remove(&w);
            if let Some(slot) = queue_slot(state.vertex_type(w)) {
                q[slot].insert(w);
            }
        }
    };

    for (ci, comp) in comps.iter().enumerate() {
        if comp.iter().all(|&v| spec.color_of(v).is_none()) {
            // No anchor: one color keeps the whole component happy (in
            // strict mode; the threshold modes still take it monochromatic).
            for &v in comp {
                let changed = state.apply_color(v, 1).expect("uncolored");
                sync(&mut queues, &state, &changed);
            }
            continue;
        }
        let mut remaining = comp
            .iter()
            .filter(|&&v| state.color_of(v).is_none())
            .count();
        while remaining > 0 {
            let lu_before = state.ever_lu_count();
            let kind;
            if let Some(&v) = queues[ci][0].first() {
                kind = StepKind::P;
                let color = state.color_of(v).expect("P-vertices are colored");
                let need = match mode {
                    HappinessMode::Strict => state.n_uncolored(v),
                    _ => ceil_threshold(mode, graph.degree(v)) - state.n_same(v),
                };
                let targets: Vec<VertexId> = graph
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| state.color_of(w).is_none())
                    .take(need)
                    .collect();
                debug_assert!(!targets.is_empty(), "P-vertex has an uncolored neighbor");
                for w in targets {
                    let changed = state.apply_color(w, color).expect("uncolored");
                    sync(&mut queues, &state, &changed);
                    remaining -= 1;
                }
                debug_assert_eq!(state.vertex_type(v), VertexType::H);
            } else if let Some(&v) = queues[ci][1].first() {
                kind = StepKind::Lh;
                let color = match mode {
                    HappinessMode::Strict => {
                        let u = state
                            .first_colored_neighbor(v)
                            .expect("Lh-vertex has a colored neighbor");
                        state.color_of(u).unwrap()
                    }
                    _ => state
                        .dominant_color(v)
                        .expect("Lh-vertex has a colored neighbor"),
                };
                let need = match mode {
                    HappinessMode::Strict => state.n_uncolored(v),
                    _ => {
                        let threshold = ceil_threshold(mode, graph.degree(v));
                        threshold.saturating_sub(state.color_count(v, color))
                    }
                };
                let targets: Vec<VertexId> = graph
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| state.color_of(w).is_none())
                    .take(need)
                    .collect();
                let changed = state.apply_color(v, color).expect("uncolored");
                sync(&mut queues, &state, &changed);
                remaining -= 1;
                for w in targets {
                    let changed = state.apply_color(w, color).expect("uncolored");
                    sync(&mut queues, &state, &changed);
                    remaining -= 1;
                }
                debug_assert_eq!(state.vertex_type(v), VertexType::H);
            } else {
                kind = StepKind::Lu;
                let &v = queues[ci][2]
                    .first()
                    .expect("component with an anchor always has a processable vertex");
                let color = match state.first_colored_neighbor(v) {
                    Some(u) => state.color_of(u).unwrap(),
                    // Only reachable under a hard threshold, where a doomed
                    // vertex may have no colored neighbor.
                    None => 1,
                };
                let changed = state.apply_color(v, color).expect("uncolored");
                sync(&mut queues, &state, &changed);
                remaining -= 1;
            }
            let lu_delta = state.ever_lu_count() - lu_before;
            match kind {
                StepKind::P => {
                    counters.p_steps += 1;
                    counters.max_lu_per_p_step = counters.max_lu_per_p_step.max(lu_delta);
                }
                StepKind::Lh => {
                    counters.lh_steps += 1;
                    counters.max_lu_per_lh_step = counters.max_lu_per_lh_step.max(lu_delta);
                }
                StepKind::Lu => {
                    counters.lu_steps += 1;
                    counters.max_lu_per_lu_step = counters.max_lu_per_lu_step.max(lu_delta);
                }
            }
        }
    }

    debug_assert!(state.is_total());
    counters.h_new = state.happy_count() - h_org;
    counters.lu_new = state.ever_lu_count() - lu_org;
    GrowthRun {
        coloring: state.coloring(),
        happy: state.happy_count(),
        counters,
    }
}

fn queue_slot(t: VertexType) -> Option<usize> {
    match t {
        VertexType::P => Some(0),
        VertexType::Lh => Some(1),
        VertexType::Lu => Some(2),
        _ => None,
    }
}
