//! Mutable coloring overlay with live vertex-type classification.
//!
//! The growth solvers repeatedly color one vertex and need the type of
//! every affected vertex kept current. `ColoringState` maintains per-vertex
//! neighbor counters and type tags incrementally; `classify_vertex`
//! recomputes a tag from the live counters, and tests audit the cached tags
//! against a from-scratch reclassification after every step.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Color, ColorSpec, Graph, HappinessMode, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StateError {
    #[error("vertex {0} is already colored")]
    AlreadyColored(VertexId),
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(Color, usize),
}

/// Vertex types driving the growth algorithms.
///
/// Colored vertices are `H` (happy), `U` (destined unhappy) or `P` (not yet
/// happy but still completable). Uncolored vertices split into `Lp`
/// (adjacent to a `P`-vertex), `Lh` (completable through its colored
/// neighborhood), `Lu` (destined unhappy) and `Lf` (no colored neighbor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexType {
    H,
    U,
    P,
    Lp,
    Lh,
    Lu,
    Lf,
}

impl VertexType {
    pub fn is_colored(self) -> bool {
        matches!(self, VertexType::H | VertexType::U | VertexType::P)
    }
}

#[derive(Debug, Clone)]
pub struct ColoringState<'g> {
    graph: &'g Graph,
    k: usize,
    mode: HappinessMode,
    color: Vec<Option<Color>>,
    n_same: Vec<u32>,
    n_diff: Vec<u32>,
    n_uncolored: Vec<u32>,
    /// Flattened `(n + 1) x k` table of per-color neighbor counts.
    per_color: Vec<u32>,
    max_color_count: Vec<u32>,
    distinct_colors: Vec<u32>,
    p_neighbors: Vec<u32>,
    vtype: Vec<VertexType>,
    p_set: BTreeSet<VertexId>,
    lh_set: BTreeSet<VertexId>,
    lu_set: BTreeSet<VertexId>,
    uncolored: usize,
    happy: usize,
    ever_lu: Vec<bool>,
    ever_lu_count: usize,
}

impl<'g> ColoringState<'g> {
    pub fn new(graph: &'g Graph, spec: &ColorSpec, mode: HappinessMode) -> Self {
        let n = graph.n();
        debug_assert_eq!(spec.n(), n, "spec sized for a different graph");
        let k = spec.k();
        let mut state = ColoringState {
            graph,
            k,
            mode,
            color: vec![None; n + 1],
            n_same: vec![0; n + 1],
            n_diff: vec![0; n + 1],
            n_uncolored: vec![0; n + 1],
            per_color: vec![0; (n + 1) * k],
            max_color_count: vec![0; n + 1],
            distinct_colors: vec![0; n + 1],
            p_neighbors: vec![0; n + 1],
            vtype: vec![VertexType::Lf; n + 1],
            p_set: BTreeSet::new(),
            lh_set: BTreeSet::new(),
            lu_set: BTreeSet::new(),
            uncolored: n,
            happy: 0,
            ever_lu: vec![false; n + 1],
            ever_lu_count: 0,
        };
        for (v, c) in spec.precolored() {
            state.color[v] = Some(c);
            state.uncolored -= 1;
        }
        // For an uncolored vertex, n_same is 0 and n_diff counts its
        // colored neighbors, so n_same + n_diff + n_uncolored = deg holds
        // for every vertex.
        for v in 1..=n {
            for &u in graph.neighbors(v) {
                match state.color[u] {
                    None => state.n_uncolored[v] += 1,
                    Some(cu) => {
                        let slot = state.per_color_slot(v, cu);
                        state.per_color[slot] += 1;
                        let cnt = state.per_color[slot];
                        if cnt == 1 {
                            state.distinct_colors[v] += 1;
                        }
                        if cnt > state.max_color_count[v] {
                            state.max_color_count[v] = cnt;
                        }
                        match state.color[v] {
                            Some(cv) if cv == cu => state.n_same[v] += 1,
                            _ => state.n_diff[v] += 1,
                        }
                    }
                }
            }
        }
        // Colored vertices classify from counters alone; set them first so
        // P-adjacency is known when the uncolored vertices classify.
        for v in 1..=n {
            if state.color[v].is_some() {
                let t = state.classify_vertex(v);
                state.vtype[v] = t;
                if t == VertexType::P {
                    state.p_set.insert(v);
                    for &u in graph.neighbors(v) {
                        state.p_neighbors[u] += 1;
                    }
                }
                if t == VertexType::H {
                    state.happy += 1;
                }
            }
        }
        for v in 1..=n {
            if state.color[v].is_none() {
                let t = state.classify_vertex(v);
                state.vtype[v] = t;
                match t {
                    VertexType::Lh => {
                        state.lh_set.insert(v);
                    }
                    VertexType::Lu => {
                        state.lu_set.insert(v);
                        state.ever_lu[v] = true;
                        state.ever_lu_count += 1;
                    }
                    _ => {}
                }
            }
        }
        state
    }

    fn per_color_slot(&self, v: VertexId, c: Color) -> usize {
        v * self.k + (c - 1)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn mode(&self) -> HappinessMode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color_of(&self, v: VertexId) -> Option<Color> {
        self.color[v]
    }

    pub fn vertex_type(&self, v: VertexId) -> VertexType {
        self.vtype[v]
    }

    pub fn n_same(&self, v: VertexId) -> usize {
        self.n_same[v] as usize
    }

    pub fn n_diff(&self, v: VertexId) -> usize {
        self.n_diff[v] as usize
    }

    pub fn n_uncolored(&self, v: VertexId) -> usize {
        self.n_uncolored[v] as usize
    }

    /// `|N_c(v)|`: neighbors of `v` currently colored `c`.
    pub fn color_count(&self, v: VertexId, c: Color) -> usize {
        self.per_color[self.per_color_slot(v, c)] as usize
    }

    /// `max_i |N_i(v)|` over all colors.
    pub fn max_color_count(&self, v: VertexId) -> usize {
        self.max_color_count[v] as usize
    }

    /// Smallest color attaining `max_color_count(v)`.
    pub fn dominant_color(&self, v: VertexId) -> Option<Color> {
        let best = self.max_color_count[v];
        if best == 0 {
            return None;
        }
        (1..=self.k).find(|&c| self.per_color[self.per_color_slot(v, c)] == best)
    }

    /// Smallest-id colored neighbor of `v`.
    pub fn first_colored_neighbor(&self, v: VertexId) -> Option<VertexId> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| self.color[u].is_some())
    }

    pub fn uncolored_count(&self) -> usize {
        self.uncolored
    }

    pub fn is_total(&self) -> bool {
        self.uncolored == 0
    }

    /// Vertices currently counted happy (type `H`).
    pub fn happy_count(&self) -> usize {
        self.happy
    }

    /// Vertices that have ever been typed `Lu`, including the initial
    /// classification.
    pub fn ever_lu_count(&self) -> usize {
        self.ever_lu_count
    }

    pub fn p_set(&self) -> &BTreeSet<VertexId> {
        &self.p_set
    }

    pub fn lh_set(&self) -> &BTreeSet<VertexId> {
        &self.lh_set
    }

    pub fn lu_set(&self) -> &BTreeSet<VertexId> {
        &self.lu_set
    }

    /// The coloring as a dense vector (0 for uncolored slots).
    pub fn coloring(&self) -> Vec<Color> {
        self.color.iter().map(|c| c.unwrap_or(0)).collect()
    }

    /// Recomputes the type of `v` from the live counters.
    ///
    /// The uncolored subtypes depend on whether a neighbor is a `P`-vertex,
    /// which is tracked by a neighbor counter kept current by
    /// `apply_color`.
    pub fn classify_vertex(&self, v: VertexId) -> VertexType {
        let deg = self.graph.degree(v);
        let same = self.n_same[v] as usize;
        let unc = self.n_uncolored[v] as usize;
        match self.color[v] {
            Some(_) => {
                if self.mode.satisfied(same, deg) {
                    VertexType::H
                } else if !self.mode.satisfied(same + unc, deg) {
                    VertexType::U
                } else {
                    VertexType::P
                }
            }
            None => {
                if self.p_neighbors[v] > 0 {
                    return VertexType::Lp;
                }
                let colored_nb = deg - unc;
                let best = self.max_color_count[v] as usize;
                match self.mode {
                    HappinessMode::Strict => {
                        if colored_nb == 0 {
                            VertexType::Lf
                        } else if self.distinct_colors[v] == 1 {
                            VertexType::Lh
                        } else {
                            VertexType::Lu
                        }
                    }
                    HappinessMode::Soft(_) => {
                        if colored_nb == 0 {
                            VertexType::Lf
                        } else if self.mode.satisfied(unc + best, deg) {
                            VertexType::Lh
                        } else {
                            VertexType::Lu
                        }
                    }
                    // A hard-threshold vertex can be doomed with no colored
                    // neighbor at all (deg < q), so Lu takes precedence
                    // over Lf here.
                    HappinessMode::Hard(_) => {
                        if !self.mode.satisfied(unc + best, deg) {
                            VertexType::Lu
                        } else if colored_nb == 0 {
                            VertexType::Lf
                        } else {
                            VertexType::Lh
                        }
                    }
                }
            }
        }
    }

    /// Colors `v` with `c`, updates all affected counters and type tags,
    /// and returns the vertices whose type changed (ascending).
    ///
    /// Counter updates touch `N(v)`; type updates reach `N(v)` and, through
    /// vertices entering or leaving type `P`, their neighbors in `N^2(v)`.
    pub fn apply_color(&mut self, v: VertexId, c: Color) -> Result<Vec<VertexId>, StateError> {
        if self.color[v].is_some() {
            return Err(StateError::AlreadyColored(v));
        }
        if c == 0 || c > self.k {
            return Err(StateError::ColorOutOfRange(c, self.k));
        }
        self.color[v] = Some(c);
        self.uncolored -= 1;
        // v's own neighbor-color table is unaffected by coloring v; its
        // same/diff split just becomes meaningful now.
        let colored_nb = self.graph.degree(v) as u32 - self.n_uncolored[v];
        self.n_same[v] = self.per_color[self.per_color_slot(v, c)];
        self.n_diff[v] = colored_nb - self.n_same[v];
        for i in 0..self.graph.neighbors(v).len() {
            let u = self.graph.neighbors(v)[i];
            self.n_uncolored[u] -= 1;
            let slot = self.per_color_slot(u, c);
            self.per_color[slot] += 1;
            let cnt = self.per_color[slot];
            if cnt == 1 {
                self.distinct_colors[u] += 1;
            }
            if cnt > self.max_color_count[u] {
                self.max_color_count[u] = cnt;
            }
            match self.color[u] {
                Some(cu) if cu == c => self.n_same[u] += 1,
                _ => self.n_diff[u] += 1,
            }
        }

        let mut changed = Vec::new();
        let mut p_flips: Vec<(VertexId, bool)> = Vec::new();

        // First pass: colored vertices (v itself plus colored neighbors).
        // Their types depend only on their own counters.
        self.retype(v, &mut changed, &mut p_flips);
        for i in 0..self.graph.neighbors(v).len() {
            let u = self.graph.neighbors(v)[i];
            if self.color[u].is_some() {
                self.retype(u, &mut changed, &mut p_flips);
            }
        }

        // P-status flips adjust the P-neighbor counters, which is the only
        // channel through which types propagate to distance two.
        let mut second_wave: Vec<VertexId> = Vec::new();
        for &(u, gained) in &p_flips {
            for i in 0..self.graph.neighbors(u).len() {
                let w = self.graph.neighbors(u)[i];
                if gained {
                    self.p_neighbors[w] += 1;
                } else {
                    self.p_neighbors[w] -= 1;
                }
                if self.color[w].is_none() {
                    second_wave.push(w);
                }
            }
        }
        for &u in self.graph.neighbors(v) {
            if self.color[u].is_none() {
                second_wave.push(u);
            }
        }
        second_wave.sort_unstable();
        second_wave.dedup();
        for w in second_wave {
            let mut no_flips = Vec::new();
            self.retype(w, &mut changed, &mut no_flips);
            debug_assert!(no_flips.is_empty(), "uncolored vertices never type P");
        }

        changed.sort_unstable();
        changed.dedup();
        Ok(changed)
    }

    fn retype(
        &mut self,
        v: VertexId,
        changed: &mut Vec<VertexId>,
        p_flips: &mut Vec<(VertexId, bool)>,
    ) {
        let old = self.vtype[v];
        let new = self.classify_vertex(v);
        if old == new {
            return;
        }
        self.vtype[v] = new;
        changed.push(v);
        match old {
            VertexType::P => {
                self.p_set.remove(&v);
                p_flips.push((v, false));
            }
            VertexType::Lh => {
                self.lh_set.remove(&v);
            }
            VertexType::Lu => {
                self.lu_set.remove(&v);
            }
            VertexType::H => {
                self.happy -= 1;
            }
            _ => {}
        }
        match new {
            VertexType::P => {
                self.p_set.insert(v);
                p_flips.push((v, true));
            }
            VertexType::Lh => {
                self.lh_set.insert(v);
            }
            VertexType::Lu => {
                self.lu_set.insert(v);
                if !self.ever_lu[v] {
                    self.ever_lu[v] = true;
                    self.ever_lu_count += 1;
                }
            }
            VertexType::H => {
                self.happy += 1;
            }
            _ => {}
        }
    }

    /// Debug check: every counter agrees with a recount over the adjacency
    /// lists.
    #[cfg(any(test, debug_assertions))]
    pub fn check_counters(&self) {
        for v in 1..=self.graph.n() {
            let deg = self.graph.degree(v);
            assert_eq!(
                self.n_same[v] as usize + self.n_diff[v] as usize
                    + self.n_uncolored[v] as usize,
                deg,
            );
            let mut unc = 0;
            let mut per = vec![0u32; self.k + 1];
            for &u in self.graph.neighbors(v) {
                match self.color[u] {
                    None => unc += 1,
                    Some(cu) => per[cu] += 1,
                }
            }
            assert_eq!(self.n_uncolored[v] as usize, unc);
            for c in 1..=self.k {
                assert_eq!(self.per_color[self.per_color_slot(v, c)], per[c]);
            }
            assert_eq!(
                self.max_color_count[v],
                (1..=self.k).map(|c| per[c]).max().unwrap_or(0)
            );
            assert_eq!(
                self.distinct_colors[v] as usize,
                (1..=self.k).filter(|&c| per[c] > 0).count()
            );
            match self.color[v] {
                Some(cv) => {
                    assert_eq!(self.n_same[v], per[cv]);
                    assert_eq!(self.n_diff[v] as usize, deg - unc - per[cv] as usize);
                }
                None => {
                    assert_eq!(self.n_same[v], 0);
                    assert_eq!(self.n_diff[v] as usize, deg - unc);
                }
            }
            let p_nb = self
                .graph
                .neighbors(v)
                .iter()
                .filter(|&&u| self.vtype[u] == VertexType::P)
                .count();
            assert_eq!(self.p_neighbors[v] as usize, p_nb);
        }
    }
}

/// From-scratch type classification of every vertex: the audit oracle for
/// the incremental state. Computes colored types first, then the uncolored
/// subtypes from the colored vertices' P-status.
pub fn classify_all_from_scratch(
    graph: &Graph,
    k: usize,
    colors: &[Option<Color>],
    mode: HappinessMode,
) -> Vec<VertexType> {
    let n = graph.n();
    let mut types = vec![VertexType::Lf; n + 1];
    let count = |v: VertexId| -> (usize, usize, Vec<usize>) {
        let mut unc = 0;
        let mut per = vec![0usize; k + 1];
        for &u in graph.neighbors(v) {
            match colors[u] {
                None => unc += 1,
                Some(cu) => per[cu] += 1,
            }
        }
        let same = colors[v].map(|cv| per[cv]).unwrap_or(0);
        (same, unc, per)
    };
    for v in 1..=n {
        if colors[v].is_none() {
            continue;
        }
        let deg = graph.degree(v);
        let (same, unc, _) = count(v);
        types[v] = if mode.satisfied(same, deg) {
            VertexType::H
        } else if !mode.satisfied(same + unc, deg) {
            VertexType::U
        } else {
            VertexType::P
        };
    }
    for v in 1..=n {
        if colors[v].is_some() {
            continue;
        }
        let deg = graph.degree(v);
        let (_, unc, per) = count(v);
        let adjacent_p = graph
            .neighbors(v)
            .iter()
            .any(|&u| types[u] == VertexType::P);
        let colored_nb = deg - unc;
        let best = (1..=k).map(|c| per[c]).max().unwrap_or(0);
        let distinct = (1..=k).filter(|&c| per[c] > 0).count();
        types[v] = if adjacent_p {
            VertexType::Lp
        } else {
            match mode {
                HappinessMode::Strict => {
                    if colored_nb == 0 {
                        VertexType::Lf
                    } else if distinct == 1 {
                        VertexType::Lh
                    } else {
                        VertexType::Lu
                    }
                }
                HappinessMode::Soft(_) => {
                    if colored_nb == 0 {
                        VertexType::Lf
                    } else if mode.satisfied(unc + best, deg) {
                        VertexType::Lh
                    } else {
                        VertexType::Lu
                    }
                }
                HappinessMode::Hard(_) => {
                    if !mode.satisfied(unc + best, deg) {
                        VertexType::Lu
                    } else if colored_nb == 0 {
                        VertexType::Lf
                    } else {
                        VertexType::Lh
                    }
                }
            }
        };
    }
    types
}
