//! Max-flow / min-cut engine and the network constructions backing the two
//! exact two-color solvers.
//!
//! Flow is computed with Dinic's algorithm over integer capacities. The
//! `Infinite` sentinel materializes as one more than the sum of all finite
//! capacities, so an infinite arc can never sit on a minimum cut.

use num::Zero;
use thiserror::Error;

use crate::graph::{Color, ColorSpec, Graph, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlowError {
    #[error("needs exactly 2 colors, spec has {0}")]
    RequiresTwoColors(usize),
    #[error("edge weights overflow the integer capacity scale")]
    CapacityOverflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

/// Capacitated directed network with designated source and sink. Every arc
/// carries an implicit reverse arc of capacity 0.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<(usize, usize, Capacity)>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert_ne!(source, sink);
        FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: Capacity) {
        debug_assert!(from < self.nodes && to < self.nodes);
        self.arcs.push((from, to, cap));
    }

    /// Adds the directed arc pair modelling one undirected edge.
    pub fn add_undirected(&mut self, a: usize, b: usize, cap: Capacity) {
        self.add_arc(a, b, cap);
        self.add_arc(b, a, cap);
    }

    fn finite_sum(&self) -> u64 {
        let total: u128 = self
            .arcs
            .iter()
            .map(|&(_, _, c)| match c {
                Capacity::Finite(x) => x as u128,
                Capacity::Infinite => 0,
            })
            .sum();
        assert!(
            total < u64::MAX as u128,
            "total finite capacity overflows the flow arithmetic"
        );
        total as u64
    }
}

/// Max-flow value together with the source side of the certified min cut.
#[derive(Debug, Clone)]
pub struct CutResult {
    pub value: u64,
    pub source_side: Vec<bool>,
}

impl CutResult {
    pub fn in_source_side(&self, node: usize) -> bool {
        self.source_side[node]
    }
}

#[derive(Clone, Copy)]
struct Arc {
    to: u32,
    rev: u32,
    cap: u64,
}

struct Dinic {
    adj: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); nodes],
            level: vec![-1; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) {
        let rev_from = self.adj[to].len() as u32;
        let rev_to = self.adj[from].len() as u32;
        self.adj[from].push(Arc {
            to: to as u32,
            rev: rev_from,
            cap,
        });
        self.adj[to].push(Arc {
            to: from as u32,
            rev: rev_to,
            cap: 0,
        });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for e in &self.adj[v] {
                if e.cap > 0 && self.level[e.to as usize] < 0 {
                    self.level[e.to as usize] = self.level[v] + 1;
                    queue.push_back(e.to as usize);
                }
            }
        }
        self.level[t] >= 0
    }

    /// One blocking-flow phase, iterative to stay off the call stack on
    /// large networks.
    fn blocking_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        self.iter.iter_mut().for_each(|i| *i = 0);
        // Stack of (node, incoming edge index at that node's predecessor).
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut node = s;
        loop {
            if node == t {
                let mut bottleneck = u64::MAX;
                for &(u, ei) in &path {
                    bottleneck = bottleneck.min(self.adj[u][ei].cap);
                }
                for &(u, ei) in &path {
                    let rev = self.adj[u][ei].rev as usize;
                    let to = self.adj[u][ei].to as usize;
                    self.adj[u][ei].cap -= bottleneck;
                    self.adj[to][rev].cap += bottleneck;
                }
                total += bottleneck;
                // Retreat to the shallowest saturated edge.
                let cut = path
                    .iter()
                    .position(|&(u, ei)| self.adj[u][ei].cap == 0)
                    .expect("bottleneck edge exists");
                path.truncate(cut);
                node = path.last().map(|&(u, ei)| self.adj[u][ei].to as usize).unwrap_or(s);
                continue;
            }
            let mut advanced = false;
            while self.iter[node] < self.adj[node].len() {
                let e = self.adj[node][self.iter[node]];
                if e.cap > 0 && self.level[e.to as usize] == self.level[node] + 1 {
                    path.push((node, self.iter[node]));
                    node = e.to as usize;
                    advanced = true;
                    break;
                }
                self.iter[node] += 1;
            }
            if advanced {
                continue;
            }
            if node == s {
                break;
            }
            // Dead end: prune and step back.
            self.level[node] = -1;
            let (prev, _) = path.pop().expect("non-source node has a path");
            self.iter[prev] += 1;
            node = prev;
        }
        total
    }
}

/// Computes a maximum flow and returns its value with the min-cut source
/// side (nodes reachable from the source in the final residual network).
pub fn max_flow(net: &FlowNetwork) -> CutResult {
    let infinite = net.finite_sum() + 1;
    let mut dinic = Dinic::new(net.nodes);
    let mut has_infinite = false;
    for &(from, to, cap) in &net.arcs {
        let c = match cap {
            Capacity::Finite(x) => x,
            Capacity::Infinite => {
                has_infinite = true;
                infinite
            }
        };
        dinic.add_edge(from, to, c);
    }
    let mut value = 0u64;
    while dinic.bfs(net.source, net.sink) {
        value += dinic.blocking_flow(net.source, net.sink);
    }
    if has_infinite {
        assert!(
            value < infinite,
            "min cut severed an infinite arc: malformed gadget"
        );
    }
    // Residual reachability from the source certifies the cut.
    let mut source_side = vec![false; net.nodes];
    let mut stack = vec![net.source];
    source_side[net.source] = true;
    while let Some(v) = stack.pop() {
        for e in &dinic.adj[v] {
            let to = e.to as usize;
            if e.cap > 0 && !source_side[to] {
                source_side[to] = true;
                stack.push(to);
            }
        }
    }
    debug_assert!(!source_side[net.sink]);
    CutResult { value, source_side }
}

/// Where an original vertex lands in a contracted network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRef {
    Source,
    Sink,
    Inner(usize),
}

/// Result of the two-color contraction for the exact MHE solver.
#[derive(Debug)]
pub enum Mhe2Build {
    /// A precolor class is empty: color every vertex `fill_color`.
    Degenerate { fill_color: Color },
    Network {
        net: FlowNetwork,
        node_of: Vec<NodeRef>,
        /// Weights were multiplied by this common denominator to obtain
        /// integer capacities.
        scale: i64,
    },
}

/// Contracts the color-1 class into the source and the color-2 class into
/// the sink; every surviving edge becomes a directed arc pair of capacity
/// equal to its scaled weight, with parallel arcs merged.
pub fn build_2mhe_network(graph: &Graph, spec: &ColorSpec) -> Result<Mhe2Build, FlowError> {
    if spec.k() != 2 {
        return Err(FlowError::RequiresTwoColors(spec.k()));
    }
    let class1 = spec.class(1);
    let class2 = spec.class(2);
    if class1.is_empty() || class2.is_empty() {
        let fill_color = if class1.is_empty() && !class2.is_empty() { 2 } else { 1 };
        return Ok(Mhe2Build::Degenerate { fill_color });
    }

    let scale = weight_scale(graph)?;
    let n = graph.n();
    let mut node_of = vec![NodeRef::Source; n + 1];
    let mut inner = 0usize;
    for v in 1..=n {
        node_of[v] = match spec.color_of(v) {
            Some(1) => NodeRef::Source,
            Some(2) => NodeRef::Sink,
            Some(_) => unreachable!("k = 2"),
            None => {
                inner += 1;
                NodeRef::Inner(1 + inner)
            }
        };
    }
    let nodes = 2 + inner;
    let to_index = |r: NodeRef| match r {
        NodeRef::Source => 0,
        NodeRef::Sink => 1,
        NodeRef::Inner(i) => i,
    };

    // Merge parallel arcs produced by the contraction.
    let mut merged: std::collections::HashMap<(usize, usize), u64> =
        std::collections::HashMap::new();
    for e in graph.edges() {
        let a = to_index(node_of[e.u]);
        let b = to_index(node_of[e.v]);
        if a == b {
            continue; // internal to a merged class
        }
        let cap = scale_weight(e.weight, scale)?;
        if cap == 0 {
            continue;
        }
        let key = (a.min(b), a.max(b));
        *merged.entry(key).or_insert(0) += cap;
    }
    let mut net = FlowNetwork::new(nodes, 0, 1);
    let mut pairs: Vec<_> = merged.into_iter().collect();
    pairs.sort_unstable_by_key(|&(k, _)| k);
    for ((a, b), cap) in pairs {
        net.add_undirected(a, b, Capacity::Finite(cap));
    }
    Ok(Mhe2Build::Network {
        net,
        node_of,
        scale,
    })
}

/// Common denominator turning every edge weight into an integer.
fn weight_scale(graph: &Graph) -> Result<i64, FlowError> {
    let mut scale: i64 = 1;
    for e in graph.edges() {
        let den = *e.weight.denom();
        scale = lcm_checked(scale, den).ok_or(FlowError::CapacityOverflow)?;
    }
    Ok(scale)
}

fn lcm_checked(a: i64, b: i64) -> Option<i64> {
    let g = num::integer::gcd(a, b);
    (a / g).checked_mul(b)
}

fn scale_weight(w: Weight, scale: i64) -> Result<u64, FlowError> {
    debug_assert!(w >= Weight::zero());
    let num = w
        .numer()
        .checked_mul(scale / w.denom())
        .ok_or(FlowError::CapacityOverflow)?;
    Ok(num as u64)
}

/// Network and vertex map of the exact two-color MHV gadget.
#[derive(Debug)]
pub struct Mhv2Gadget {
    pub net: FlowNetwork,
    /// Node index of each original vertex.
    pub node_of: Vec<usize>,
}

/// Builds the happiness gadget for two-color MHV.
///
/// For each vertex `v`, auxiliary node `a_v` charges one unit whenever the
/// closed neighborhood `N[v]` is not entirely on the sink side, and `b_v`
/// charges one unit whenever it is not entirely on the source side; a
/// vertex is happy exactly when one of the two charges is avoided, so the
/// minimum cut equals `n` plus the minimum number of unhappy vertices.
/// Precolored vertices are pinned to their side with infinite arcs.
pub fn build_2mhv_gadget(graph: &Graph, spec: &ColorSpec) -> Result<Mhv2Gadget, FlowError> {
    if spec.k() != 2 {
        return Err(FlowError::RequiresTwoColors(spec.k()));
    }
    let n = graph.n();
    // Layout: s = 0, t = 1, vertex v -> 1 + v, a_v -> n + 1 + v,
    // b_v -> 2n + 1 + v.
    let nodes = 3 * n + 2;
    let mut net = FlowNetwork::new(nodes, 0, 1);
    let node_of: Vec<usize> = (0..=n).map(|v| 1 + v).collect();
    for v in 1..=n {
        let a_v = n + 1 + v;
        let b_v = 2 * n + 1 + v;
        net.add_arc(node_of[v], a_v, Capacity::Infinite);
        net.add_arc(b_v, node_of[v], Capacity::Infinite);
        for &u in graph.neighbors(v) {
            net.add_arc(node_of[u], a_v, Capacity::Infinite);
            net.add_arc(b_v, node_of[u], Capacity::Infinite);
        }
        net.add_arc(a_v, 1, Capacity::Finite(1));
        net.add_arc(0, b_v, Capacity::Finite(1));
    }
    for (v, c) in spec.precolored() {
        match c {
            1 => net.add_arc(0, node_of[v], Capacity::Infinite),
            2 => net.add_arc(node_of[v], 1, Capacity::Infinite),
            _ => unreachable!("k = 2"),
        }
    }
    Ok(Mhv2Gadget { net, node_of })
}
