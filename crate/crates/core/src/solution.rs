//! Solver output: a total coloring, its objective value and run counters.

use std::fmt;

use crate::graph::{Color, Weight};

/// Which objective a solution was scored under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Mhv,
    Mhe,
    SoftMhv,
    HardMhv,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProblemKind::Mhv => "mhv",
            ProblemKind::Mhe => "mhe",
            ProblemKind::SoftMhv => "soft-mhv",
            ProblemKind::HardMhv => "hard-mhv",
        };
        f.write_str(s)
    }
}

/// Happy-vertex count or happy-edge weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Vertices(usize),
    EdgeWeight(Weight),
}

impl Objective {
    pub fn as_weight(&self) -> Weight {
        match *self {
            Objective::Vertices(n) => Weight::from_integer(n as i64),
            Objective::EdgeWeight(w) => w,
        }
    }

    pub fn vertices(&self) -> Option<usize> {
        match *self {
            Objective::Vertices(n) => Some(n),
            Objective::EdgeWeight(_) => None,
        }
    }
}

impl PartialOrd for Objective {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.as_weight().cmp(&other.as_weight()))
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Vertices(n) => write!(f, "{n}"),
            Objective::EdgeWeight(w) => {
                if w.is_integer() {
                    write!(f, "{}", w.numer())
                } else {
                    write!(f, "{}/{}", w.numer(), w.denom())
                }
            }
        }
    }
}

/// Ledger kept by the growth algorithms: type-set sizes of the initial
/// classification, what the run generated, and the per-step maxima of
/// newly created doomed vertices split by step kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GrowthCounters {
    pub h_org: usize,
    pub h_new: usize,
    pub l_org: usize,
    pub lu_org: usize,
    pub lu_new: usize,
    pub p_steps: usize,
    pub lh_steps: usize,
    pub lu_steps: usize,
    pub max_lu_per_p_step: usize,
    pub max_lu_per_lh_step: usize,
    pub max_lu_per_lu_step: usize,
}

/// Ledger kept by the division algorithm: weight already happy under the
/// precoloring, the star-optimal weight on the one-colored-endpoint
/// subgraph, and the weight of fully uncolored edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionCounters {
    pub w_org: Weight,
    pub w_prime: Weight,
    pub w_dprime: Weight,
}

impl DivisionCounters {
    /// The upper bound `W_org + W' + W''` on the optimum.
    pub fn bound(&self) -> Weight {
        self.w_org + self.w_prime + self.w_dprime
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counters {
    None,
    Growth(GrowthCounters),
    Division(DivisionCounters),
}

impl Counters {
    pub fn growth(&self) -> Option<&GrowthCounters> {
        match self {
            Counters::Growth(g) => Some(g),
            _ => None,
        }
    }

    pub fn division(&self) -> Option<&DivisionCounters> {
        match self {
            Counters::Division(d) => Some(d),
            _ => None,
        }
    }
}

/// A total coloring with its objective value and provenance.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Dense coloring indexed by vertex id; slot 0 is unused.
    pub coloring: Vec<Color>,
    pub objective: Objective,
    pub kind: ProblemKind,
    pub algorithm: String,
    pub counters: Counters,
}

impl Solution {
    pub fn new(
        coloring: Vec<Color>,
        objective: Objective,
        kind: ProblemKind,
        algorithm: impl Into<String>,
    ) -> Self {
        Solution {
            coloring,
            objective,
            kind,
            algorithm: algorithm.into(),
            counters: Counters::None,
        }
    }

    pub fn with_counters(mut self, counters: Counters) -> Self {
        self.counters = counters;
        self
    }
}
