//! Solvers, hardness reductions and instance tooling for the maximum happy
//! vertices (MHV) and maximum happy edges (MHE) coloring problems.
//!
//! Given a graph and a partial vertex coloring, a vertex is happy when all
//! of its neighbors share its color (or a soft fraction `rho` / a hard
//! count `q` of them, in the threshold variants), and an edge is happy
//! when its endpoints match. The library extends partial colorings to
//! total ones maximizing either count:
//!
//! * exact polynomial-time solvers for the two-color cases, built on
//!   max-flow / min-cut;
//! * a 1/k-approximate greedy sweep and an `Omega(max_degree^-3)`
//!   subset-growth algorithm for happy vertices, with instrumented run
//!   ledgers;
//! * a 1/2-approximate division algorithm for weighted happy edges;
//! * brute-force oracles that certify all of the above at small scale;
//! * constructors and verifiers for the hardness reductions connecting
//!   multiway cut, MHE, MHV and the threshold variants;
//! * a text instance format plus seeded random and planted-partition
//!   generators.

pub mod flow;
pub mod graph;
pub mod io;
pub mod reductions;
pub mod solution;
pub mod solvers;
pub mod state;

pub use graph::{
    count_happy_vertices, happy_edge_weight, Color, ColorSpec, Graph, GraphError, HappinessMode,
    VertexId, Weight,
};
pub use solution::{Counters, DivisionCounters, GrowthCounters, Objective, ProblemKind, Solution};
pub use solvers::mhe::{brute_force_mhe, division_mhe, exact_2mhe};
pub use solvers::mhv::{brute_force_mhv, exact_2mhv, greedy_mhv, growth_mhv};
pub use solvers::variants::{
    greedy_variant, growth_hard_mhv, growth_hard_mhv_forced, growth_soft_mhv,
};
pub use solvers::SolverError;
pub use state::{classify_all_from_scratch, ColoringState, StateError, VertexType};
