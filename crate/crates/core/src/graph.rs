//! Graph representation, partial colorings and happiness semantics.
//!
//! Vertices are dense ids `1..=n`, colors are dense ids `1..=k`. All arrays
//! indexed by vertex leave slot 0 unused so ids can be used directly.

use num::rational::Rational64;
use num::{One, Zero};
use thiserror::Error;

pub type VertexId = usize;
pub type Color = usize;
pub type Weight = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(VertexId, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(VertexId, VertexId),
    #[error("negative edge weight on ({0}, {1})")]
    NegativeWeight(VertexId, VertexId),
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(Color, usize),
    #[error("vertex {0} precolored twice")]
    DuplicatePrecolor(VertexId),
    #[error("color count must be at least 1")]
    NoColors,
    #[error("soft threshold must lie strictly between 0 and 1, got {0}")]
    SoftThresholdOutOfRange(Rational64),
    #[error("hard threshold must be a positive integer")]
    HardThresholdZero,
}

/// An edge with a nonnegative rational weight. Endpoints are stored with
/// `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

/// Immutable simple undirected graph with optional nonnegative edge weights.
///
/// No self-loops, no parallel edges; adjacency lists are sorted and
/// symmetric.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    max_degree: usize,
}

impl Graph {
    /// Builds a unit-weight graph from an edge list.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let weighted: Vec<(VertexId, VertexId, Weight)> = edges
            .iter()
            .map(|&(u, v)| (u, v, Weight::one()))
            .collect();
        Self::new_weighted(n, weighted)
    }

    /// Builds a graph from a weighted edge list.
    pub fn new_weighted(
        n: usize,
        edges: Vec<(VertexId, VertexId, Weight)>,
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
        let mut canon: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == 0 || u > n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w < Weight::zero() {
                return Err(GraphError::NegativeWeight(u, v));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            adj[a].push(b);
            adj[b].push(a);
            canon.push(Edge { u: a, v: b, weight: w });
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        canon.sort_by(|a, b| (a.u, a.v).cmp(&(b.u, b.v)));
        for w in canon.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::ParallelEdge(w[0].u, w[0].v));
            }
        }
        let max_degree = adj.iter().map(|l| l.len()).max().unwrap_or(0);
        Ok(Graph {
            n,
            adj,
            edges: canon,
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == Weight::one())
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// The same graph with every weight set to 1.
    pub fn unit_weighted(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, Weight::one()))
            .collect();
        Graph::new_weighted(self.n, edges).expect("valid graph stays valid")
    }
}

/// Number of colors plus the partial precoloring that every solver extends.
#[derive(Debug, Clone)]
pub struct ColorSpec {
    k: usize,
    precolor: Vec<Option<Color>>,
}

impl ColorSpec {
    pub fn new(
        k: usize,
        n: usize,
        assignments: &[(VertexId, Color)],
    ) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::NoColors);
        }
        let mut precolor = vec![None; n + 1];
        for &(v, c) in assignments {
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if c == 0 || c > k {
                return Err(GraphError::ColorOutOfRange(c, k));
            }
            if precolor[v].is_some() {
                return Err(GraphError::DuplicatePrecolor(v));
            }
            precolor[v] = Some(c);
        }
        Ok(ColorSpec { k, precolor })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self, GraphError> {
        Self::new(k, n, &[])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.precolor.len() - 1
    }

    pub fn color_of(&self, v: VertexId) -> Option<Color> {
        self.precolor[v]
    }

    pub fn precolored(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.precolor
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn precolored_count(&self) -> usize {
        self.precolor.iter().flatten().count()
    }

    pub fn uncolored_count(&self) -> usize {
        self.n() - self.precolored_count()
    }

    /// Vertices precolored with `c`, ascending.
    pub fn class(&self, c: Color) -> Vec<VertexId> {
        self.precolored()
            .filter_map(|(v, col)| (col == c).then_some(v))
            .collect()
    }

    /// Distinct colors used by the precoloring.
    pub fn used_colors(&self) -> Vec<Color> {
        let mut used = vec![false; self.k + 1];
        for (_, c) in self.precolored() {
            used[c] = true;
        }
        (1..=self.k).filter(|&c| used[c]).collect()
    }
}

/// When a colored vertex counts as happy.
///
/// * `Strict`: all neighbors share its color.
/// * `Soft(rho)`: at least `rho * deg(v)` neighbors share its color,
///   `0 < rho < 1`. Comparisons are exact rational arithmetic; use `Strict`
///   for the degenerate threshold `rho = 1`.
/// * `Hard(q)`: at least `q` neighbors share its color, `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HappinessMode {
    Strict,
    Soft(Rational64),
    Hard(usize),
}

impl HappinessMode {
    pub fn soft(rho: Rational64) -> Result<Self, GraphError> {
        if rho <= Rational64::zero() || rho >= Rational64::one() {
            return Err(GraphError::SoftThresholdOutOfRange(rho));
        }
        Ok(HappinessMode::Soft(rho))
    }

    pub fn hard(q: usize) -> Result<Self, GraphError> {
        if q == 0 {
            return Err(GraphError::HardThresholdZero);
        }
        Ok(HappinessMode::Hard(q))
    }

    /// `true` when `same` matching neighbors out of `deg` make a vertex
    /// happy.
    pub fn satisfied(&self, same: usize, deg: usize) -> bool {
        match *self {
            HappinessMode::Strict => same == deg,
            // same >= rho * deg, evaluated as same * den >= num * deg.
            HappinessMode::Soft(rho) => {
                (same as i128) * (*rho.denom() as i128) >= (*rho.numer() as i128) * (deg as i128)
            }
            HappinessMode::Hard(q) => same >= q,
        }
    }
}

/// Checks that `coloring` (indexed by vertex, slot 0 ignored) is a total
/// coloring of `graph` with colors in `1..=k`.
pub fn validate_total(graph: &Graph, coloring: &[Color], k: usize) -> Result<(), GraphError> {
    if coloring.len() != graph.n() + 1 {
        return Err(GraphError::VertexOutOfRange(coloring.len(), graph.n()));
    }
    for v in 1..=graph.n() {
        let c = coloring[v];
        if c == 0 || c > k {
            return Err(GraphError::ColorOutOfRange(c, k));
        }
    }
    Ok(())
}

/// Number of same-colored neighbors of `v` under a total coloring.
fn same_neighbors(graph: &Graph, coloring: &[Color], v: VertexId) -> usize {
    graph
        .neighbors(v)
        .iter()
        .filter(|&&u| coloring[u] == coloring[v])
        .count()
}

/// Counts happy vertices of a total coloring under `mode`.
pub fn count_happy_vertices(graph: &Graph, coloring: &[Color], mode: HappinessMode) -> usize {
    (1..=graph.n())
        .filter(|&v| mode.satisfied(same_neighbors(graph, coloring, v), graph.degree(v)))
        .count()
}

/// Total weight of edges whose endpoints share a color.
pub fn happy_edge_weight(graph: &Graph, coloring: &[Color]) -> Weight {
    graph
        .edges()
        .iter()
        .filter(|e| coloring[e.u] == coloring[e.v])
        .map(|e| e.weight)
        .sum()
}
