//! Shared instance samplers for the integration suites.
#![allow(dead_code)] // each test binary uses a subset

use happy_core::io::gen_random;
use happy_core::{ColorSpec, Graph, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

pub const REVEALS: [f64; 5] = [0.0, 0.2, 0.5, 0.8, 1.0];

/// Random instance with mixed reveal fraction, any shape.
pub fn random_instance(seed: u64, n_max: usize, k: usize) -> (Graph, ColorSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let n = rng.random_range(2..=n_max);
    let p = rng.random_range(0.15..0.65);
    let reveal = REVEALS[rng.random_range(0..REVEALS.len())];
    gen_random(n, p, k, reveal, seed)
}

/// Random connected instance with max degree at least 2.
pub fn connected_instance(seed: u64, n_max: usize, k: usize) -> (Graph, ColorSpec) {
    let mut s = seed;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5eed);
        let n = rng.random_range(4..=n_max);
        let p = rng.random_range(0.15..0.6);
        let reveal = REVEALS[rng.random_range(0..REVEALS.len())];
        let (g, spec) = gen_random(n, p, k, reveal, s);
        if g.is_connected() && g.max_degree() >= 2 {
            return (g, spec);
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}

/// Random instance with integer weights drawn from 1..=5.
pub fn weighted_instance(seed: u64, n_max: usize, k: usize) -> (Graph, ColorSpec) {
    let (g0, spec) = random_instance(seed, n_max, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77aa);
    let edges: Vec<(usize, usize, Weight)> = g0
        .edges()
        .iter()
        .map(|e| (e.u, e.v, Weight::from_integer(rng.random_range(1..=5))))
        .collect();
    (Graph::new_weighted(g0.n(), edges).unwrap(), spec)
}

/// Uniform random graph with exactly `m` edges.
pub fn gnm_graph(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(2 * m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(1..=n);
        let v = rng.random_range(1..=n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Precoloring with `reveal` fraction and colors in 1..=k.
pub fn random_precolor(n: usize, k: usize, reveal: f64, seed: u64) -> ColorSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pre = Vec::new();
    for v in 1..=n {
        if rng.random_bool(reveal) {
            pre.push((v, rng.random_range(1..=k)));
        }
    }
    ColorSpec::new(k, n, &pre).unwrap()
}
