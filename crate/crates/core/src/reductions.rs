//! Hardness-reduction constructors, each paired with a value-relation
//! verifier driven by the brute-force oracles.
//!
//! The reductions operate on unweighted instances: value relations count
//! happy edges and happy vertices, and the verifiers evaluate both sides on
//! unit-weight copies.

use num::rational::Rational64;
use num::{One, Zero};
use thiserror::Error;

use crate::graph::{Color, ColorSpec, Graph, HappinessMode, VertexId};
use crate::solution::ProblemKind;
use crate::solvers::mhe::brute_force_mhe;
use crate::solvers::mhv::{brute_force_mhv, enumeration_count};
use crate::solvers::SolverError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("expected exactly 3 terminals, got {0}")]
    TerminalCount(usize),
    #[error("terminal {0} invalid or repeated")]
    BadTerminal(VertexId),
    #[error("need at least 2 terminals, got {0}")]
    TooFewTerminals(usize),
    #[error("source instance must use exactly 3 colors, has {0}")]
    SourceNotThreeColors(usize),
    #[error("target color count {0} must be at least 3")]
    KTooSmall(usize),
    #[error("no vertex is precolored with color 1")]
    MissingColorOne,
    #[error("source precoloring is empty")]
    EmptyPrecoloring,
    #[error("source graph has no edges (max degree 0)")]
    NoEdges,
    #[error("soft threshold {0} must lie strictly between 0 and 1")]
    SoftThresholdOutOfRange(Rational64),
}

/// Multiway-cut instance with unit edge costs.
#[derive(Debug, Clone)]
pub struct MultiwayCutInstance {
    pub graph: Graph,
    pub terminals: Vec<VertexId>,
}

impl MultiwayCutInstance {
    pub fn new(graph: Graph, terminals: Vec<VertexId>) -> Result<Self, ReductionError> {
        if terminals.len() < 2 {
            return Err(ReductionError::TooFewTerminals(terminals.len()));
        }
        for (i, &t) in terminals.iter().enumerate() {
            if t == 0 || t > graph.n() {
                return Err(ReductionError::BadTerminal(t));
            }
            if terminals[..i].contains(&t) {
                return Err(ReductionError::BadTerminal(t));
            }
        }
        Ok(MultiwayCutInstance { graph, terminals })
    }
}

/// The instance a reduction starts from.
#[derive(Debug, Clone)]
pub enum SourceInstance {
    MultiwayCut(MultiwayCutInstance),
    Mhe { graph: Graph, spec: ColorSpec },
}

/// The instance a reduction produces.
#[derive(Debug, Clone)]
pub struct TargetInstance {
    pub graph: Graph,
    pub spec: ColorSpec,
    pub mode: HappinessMode,
    pub kind: ProblemKind,
}

/// How source and target optima relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueMap {
    /// `OPT_target = a * OPT_source + b`.
    Affine { a: i64, b: i64 },
    /// `OPT_target = delta * n + (h + 1) * m + OPT_source`, the equality
    /// form of the soft-gadget iff-claim.
    SoftIff {
        delta: usize,
        n: usize,
        m: usize,
        offset: usize,
    },
}

/// Gadget parameters, where applicable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GadgetParams {
    pub k: Option<usize>,
    pub h: Option<usize>,
    pub q: Option<usize>,
    pub delta: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub source: SourceInstance,
    pub target: TargetInstance,
    pub value_map: ValueMap,
    pub params: GadgetParams,
}

/// Multiway cut with 3 terminals becomes 3-MHE on the same graph: color
/// the terminals 1, 2, 3 and leave everything else free. The optima relate
/// by `OPT_MHE = m - OPT_cut`.
pub fn multiway_cut_to_3mhe(mc: &MultiwayCutInstance) -> Result<ReductionOutput, ReductionError> {
    if mc.terminals.len() != 3 {
        return Err(ReductionError::TerminalCount(mc.terminals.len()));
    }
    let graph = mc.graph.clone();
    let precolor: Vec<(VertexId, Color)> = mc
        .terminals
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i + 1))
        .collect();
    let spec = ColorSpec::new(3, graph.n(), &precolor).expect("terminals validated");
    Ok(ReductionOutput {
        source: SourceInstance::MultiwayCut(mc.clone()),
        target: TargetInstance {
            graph,
            spec,
            mode: HappinessMode::Strict,
            kind: ProblemKind::Mhe,
        },
        value_map: ValueMap::Affine {
            a: -1,
            b: mc.graph.m() as i64,
        },
        params: GadgetParams::default(),
    })
}

/// Pads a 3-MHE instance to k colors: a pendant edge `(x_i, y_i)`
/// precolored `i` for each new color, anchored to the smallest color-1
/// vertex by an always-unhappy edge. Shifts the optimum by `k - 3`.
pub fn pad_3mhe_to_kmhe(
    graph: &Graph,
    spec: &ColorSpec,
    k: usize,
) -> Result<ReductionOutput, ReductionError> {
    if spec.k() != 3 {
        return Err(ReductionError::SourceNotThreeColors(spec.k()));
    }
    if k < 3 {
        return Err(ReductionError::KTooSmall(k));
    }
    let anchor = *spec
        .class(1)
        .first()
        .ok_or(ReductionError::MissingColorOne)?;
    let n = graph.n();
    let pad = k - 3;
    let n2 = n + 2 * pad;
    let mut edges: Vec<(VertexId, VertexId)> = graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut precolor: Vec<(VertexId, Color)> = spec.precolored().collect();
    for i in 4..=k {
        let x = n + 2 * (i - 4) + 1;
        let y = n + 2 * (i - 4) + 2;
        edges.push((x, y));
        edges.push((anchor, x));
        precolor.push((x, i));
        precolor.push((y, i));
    }
    let graph2 = Graph::new(n2, &edges).expect("fresh ids");
    let spec2 = ColorSpec::new(k, n2, &precolor).expect("colors in 1..=k");
    Ok(ReductionOutput {
        source: SourceInstance::Mhe {
            graph: graph.clone(),
            spec: spec.clone(),
        },
        target: TargetInstance {
            graph: graph2,
            spec: spec2,
            mode: HappinessMode::Strict,
            kind: ProblemKind::Mhe,
        },
        value_map: ValueMap::Affine {
            a: 1,
            b: pad as i64,
        },
        params: GadgetParams {
            k: Some(k),
            ..GadgetParams::default()
        },
    })
}

/// k-MHE to k-MHV: k apex vertices colored 1..k adjacent to every original
/// vertex, and a degree-2 subdivision vertex per original edge. Only the
/// subdivision vertices can be happy, one per originally happy edge, so
/// the optima coincide.
pub fn mhe_to_mhv(graph: &Graph, spec: &ColorSpec) -> Result<ReductionOutput, ReductionError> {
    if spec.precolored_count() == 0 {
        return Err(ReductionError::EmptyPrecoloring);
    }
    let n = graph.n();
    let m = graph.m();
    let k = spec.k();
    let n2 = n + k + m;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(k * n + 2 * m);
    let mut precolor: Vec<(VertexId, Color)> = spec.precolored().collect();
    for i in 1..=k {
        let apex = n + i;
        precolor.push((apex, i));
        for v in 1..=n {
            edges.push((v, apex));
        }
    }
    for (j, e) in graph.edges().iter().enumerate() {
        let y = n + k + j + 1;
        edges.push((e.u, y));
        edges.push((y, e.v));
    }
    let graph2 = Graph::new(n2, &edges).expect("fresh ids");
    let spec2 = ColorSpec::new(k, n2, &precolor).expect("colors in 1..=k");
    Ok(ReductionOutput {
        source: SourceInstance::Mhe {
            graph: graph.clone(),
            spec: spec.clone(),
        },
        target: TargetInstance {
            graph: graph2,
            spec: spec2,
            mode: HappinessMode::Strict,
            kind: ProblemKind::Mhv,
        },
        value_map: ValueMap::Affine { a: 1, b: 0 },
        params: GadgetParams {
            k: Some(k),
            ..GadgetParams::default()
        },
    })
}

/// k-MHE to HardMHV with `q = max_degree + 1`: each edge is subdivided
/// through a hub `x_uv` padded with `max_degree - 1` satellite leaves.
/// Originals and satellites can never reach `q` matching neighbors; a hub
/// is happy exactly when its whole neighborhood matches, i.e. when the
/// original edge is happy.
pub fn mhe_to_hardmhv(graph: &Graph, spec: &ColorSpec) -> Result<ReductionOutput, ReductionError> {
    if spec.k() < 3 {
        return Err(ReductionError::KTooSmall(spec.k()));
    }
    let delta = graph.max_degree();
    if delta == 0 {
        return Err(ReductionError::NoEdges);
    }
    let q = delta + 1;
    let n = graph.n();
    let m = graph.m();
    let n2 = n + m * delta;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(2 * m + m * (delta - 1));
    for (j, e) in graph.edges().iter().enumerate() {
        let block = n + j * delta;
        let x = block + 1;
        edges.push((e.u, x));
        edges.push((x, e.v));
        for s in 1..delta {
            edges.push((x, block + 1 + s));
        }
    }
    let precolor: Vec<(VertexId, Color)> = spec.precolored().collect();
    let graph2 = Graph::new(n2, &edges).expect("fresh ids");
    let spec2 = ColorSpec::new(spec.k(), n2, &precolor).expect("colors in 1..=k");
    Ok(ReductionOutput {
        source: SourceInstance::Mhe {
            graph: graph.clone(),
            spec: spec.clone(),
        },
        target: TargetInstance {
            graph: graph2,
            spec: spec2,
            mode: HappinessMode::Hard(q),
            kind: ProblemKind::HardMhv,
        },
        value_map: ValueMap::Affine { a: 1, b: 0 },
        params: GadgetParams {
            q: Some(q),
            delta: Some(delta),
            ..GadgetParams::default()
        },
    })
}

/// Smallest gadget parameters `(k, h)` for the soft-threshold reduction:
/// `k` is the least integer at least `max(4/rho - 3, 2/rho, 3)` and `h`
/// the least integer in `[(rho*k + 2rho - 3)/(1 - rho),
/// (rho*k + 2rho - 2)/(1 - rho))`. Both defining inequalities
/// `h + 3 >= rho (h + k + 2)` and `h + 2 < rho (h + k + 2)` are re-checked
/// exactly before returning.
pub fn soft_params(rho: Rational64) -> Result<(usize, usize), ReductionError> {
    if rho <= Rational64::zero() || rho >= Rational64::one() {
        return Err(ReductionError::SoftThresholdOutOfRange(rho));
    }
    let one = Rational64::one();
    let four_over = Rational64::from_integer(4) / rho - Rational64::from_integer(3);
    let two_over = Rational64::from_integer(2) / rho;
    let three = Rational64::from_integer(3);
    let need = four_over.max(two_over).max(three);
    let k = ceil_rational(need);
    let k_rat = Rational64::from_integer(k as i64);
    let lo = (rho * k_rat + rho + rho - three) / (one - rho);
    let h = ceil_rational(lo);
    let h_rat = Rational64::from_integer(h as i64);
    let degree = h_rat + k_rat + Rational64::from_integer(2);
    assert!(h_rat + three >= rho * degree, "gadget inequality (1) failed");
    assert!(
        h_rat + Rational64::from_integer(2) < rho * degree,
        "gadget inequality (2) failed"
    );
    Ok((k, h))
}

fn ceil_rational(r: Rational64) -> usize {
    debug_assert!(r > Rational64::zero());
    r.ceil().to_integer() as usize
}

/// 3-MHE to SoftMHV. Per edge `(u, v)`: a hub `x_uv` subdividing the edge,
/// `h` free y-leaves and `k` z-leaves precolored 1..k. Per original
/// vertex: `delta * k` w-leaves, `delta` of each color, which pin the
/// original vertices unhappy. The optima satisfy
/// `n* = delta * n + (h + 1) m + m*`.
pub fn mhe_to_softmhv(
    graph: &Graph,
    spec: &ColorSpec,
    rho: Rational64,
) -> Result<ReductionOutput, ReductionError> {
    if spec.k() != 3 {
        return Err(ReductionError::SourceNotThreeColors(spec.k()));
    }
    let (k, h) = soft_params(rho)?;
    let delta = graph.max_degree();
    let n = graph.n();
    let m = graph.m();
    let block = 1 + h + k;
    let n2 = n + m * block + n * delta * k;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut precolor: Vec<(VertexId, Color)> = spec.precolored().collect();
    for (j, e) in graph.edges().iter().enumerate() {
        let base = n + j * block;
        let x = base + 1;
        edges.push((e.u, x));
        edges.push((x, e.v));
        for t in 1..=h {
            edges.push((x, base + 1 + t));
        }
        for i in 1..=k {
            let z = base + 1 + h + i;
            edges.push((x, z));
            precolor.push((z, i));
        }
    }
    let w_base = n + m * block;
    for v in 1..=n {
        for i in 1..=k {
            for j in 1..=delta {
                let w = w_base + (v - 1) * delta * k + (i - 1) * delta + j;
                edges.push((w, v));
                precolor.push((w, i));
            }
        }
    }
    let graph2 = Graph::new(n2, &edges).expect("fresh ids");
    let spec2 = ColorSpec::new(k, n2, &precolor).expect("colors in 1..=k");
    Ok(ReductionOutput {
        source: SourceInstance::Mhe {
            graph: graph.clone(),
            spec: spec.clone(),
        },
        target: TargetInstance {
            graph: graph2,
            spec: spec2,
            mode: HappinessMode::Soft(rho),
            kind: ProblemKind::SoftMhv,
        },
        value_map: ValueMap::SoftIff {
            delta,
            n,
            m,
            offset: delta * n + (h + 1) * m,
        },
        params: GadgetParams {
            k: Some(k),
            h: Some(h),
            delta: Some(delta),
            ..GadgetParams::default()
        },
    })
}

/// Optimal multiway-cut value by enumerating assignments of non-terminal
/// vertices to the terminal groups.
pub fn multiway_cut_opt(mc: &MultiwayCutInstance, budget: u64) -> Result<u64, SolverError> {
    let g = &mc.graph;
    let t = mc.terminals.len();
    let free: Vec<VertexId> = (1..=g.n())
        .filter(|v| !mc.terminals.contains(v))
        .collect();
    let required = enumeration_count(t, free.len());
    if required > budget as u128 {
        return Err(SolverError::BudgetExceeded { required, budget });
    }
    let mut group = vec![0usize; g.n() + 1];
    for (i, &term) in mc.terminals.iter().enumerate() {
        group[term] = i + 1;
    }
    for &v in &free {
        group[v] = 1;
    }
    let cost = |group: &[usize]| -> u64 {
        g.edges()
            .iter()
            .filter(|e| group[e.u] != group[e.v])
            .count() as u64
    };
    let mut best = cost(&group);
    let mut digits = vec![1usize; free.len()];
    loop {
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            if digits[pos] < t {
                digits[pos] += 1;
                group[free[pos]] = digits[pos];
                break;
            }
            digits[pos] = 1;
            group[free[pos]] = 1;
        }
        best = best.min(cost(&group));
    }
}

/// Outcome of checking a reduction's value relation with the oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds {
        source_opt: i64,
        target_opt: i64,
    },
    Violated {
        source_opt: i64,
        target_opt: i64,
        expected: i64,
    },
    /// An oracle refused within the budget.
    Skipped { required: u128, budget: u64 },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }
}

/// Computes both optima by brute force and checks the value relation
/// exactly. Weighted sources are evaluated as unweighted (the relations
/// count happy edges).
pub fn verify_reduction(output: &ReductionOutput, budget: u64) -> Verdict {
    let source_opt = match &output.source {
        SourceInstance::MultiwayCut(mc) => match multiway_cut_opt(mc, budget) {
            Ok(v) => v as i64,
            Err(SolverError::BudgetExceeded { required, budget }) => {
                return Verdict::Skipped { required, budget }
            }
            Err(e) => unreachable!("enumeration cannot fail otherwise: {e}"),
        },
        SourceInstance::Mhe { graph, spec } => {
            match brute_force_mhe(&graph.unit_weighted(), spec, budget) {
                Ok(sol) => weight_to_count(sol.objective.as_weight()),
                Err(SolverError::BudgetExceeded { required, budget }) => {
                    return Verdict::Skipped { required, budget }
                }
                Err(e) => unreachable!("oracle cannot fail otherwise: {e}"),
            }
        }
    };
    let target = &output.target;
    let target_opt = match target.kind {
        ProblemKind::Mhe => match brute_force_mhe(&target.graph.unit_weighted(), &target.spec, budget)
        {
            Ok(sol) => weight_to_count(sol.objective.as_weight()),
            Err(SolverError::BudgetExceeded { required, budget }) => {
                return Verdict::Skipped { required, budget }
            }
            Err(e) => unreachable!("oracle cannot fail otherwise: {e}"),
        },
        _ => match brute_force_mhv(&target.graph, &target.spec, target.mode, budget) {
            Ok(sol) => sol.objective.vertices().expect("vertex objective") as i64,
            Err(SolverError::BudgetExceeded { required, budget }) => {
                return Verdict::Skipped { required, budget }
            }
            Err(e) => unreachable!("oracle cannot fail otherwise: {e}"),
        },
    };
    let expected = match output.value_map {
        ValueMap::Affine { a, b } => a * source_opt + b,
        ValueMap::SoftIff { offset, .. } => offset as i64 + source_opt,
    };
    if target_opt == expected {
        Verdict::Holds {
            source_opt,
            target_opt,
        }
    } else {
        Verdict::Violated {
            source_opt,
            target_opt,
            expected,
        }
    }
}

fn weight_to_count(w: crate::graph::Weight) -> i64 {
    debug_assert!(w.is_integer());
    *w.numer() / *w.denom()
}
