//! Instance file formats and random instance generators.
//!
//! Happy-coloring grammar (one record per line, `#` comments, blank lines
//! ignored):
//!
//! ```text
//! p happy <n> <m> <k>      # exactly one, first significant line
//! mode strict | mode soft <num>/<den> | mode hard <q>   # optional
//! v <id> <color>           # precolored vertex
//! e <u> <v> [weight]       # weight: nonnegative decimal or fraction
//! ```
//!
//! Multiway-cut grammar: `p mwc <n> <m> <t>`, then `t <id>` terminal lines
//! and `e <u> <v>` edge lines.
//!
//! Writers canonicalize (vertices ascending, edges lexicographic, LF line
//! endings), so write -> parse -> write is byte-stable.

use std::collections::HashSet;
use std::fmt::Write as _;

use num::rational::Rational64;
use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Color, ColorSpec, Graph, HappinessMode, VertexId, Weight};
use crate::reductions::MultiwayCutInstance;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Parses a nonnegative rational written as an integer, a decimal or a
/// fraction `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.parse().ok()?;
        let den: i64 = den.parse().ok()?;
        if num < 0 || den <= 0 {
            return None;
        }
        return Some(Rational64::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        if int < 0 || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mantissa: i64 = frac.parse().ok()?;
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        return Some(
            Rational64::from_integer(int) + Rational64::new(mantissa, scale),
        );
    }
    let int: i64 = s.parse().ok()?;
    if int < 0 {
        return None;
    }
    Some(Rational64::from_integer(int))
}

/// Formats a rational as an integer when possible, `p/q` otherwise.
pub fn format_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} '{token}'")))
}

/// Parses a happy-coloring instance file.
pub fn parse_instance(text: &str) -> Result<(Graph, ColorSpec, HappinessMode), ParseError> {
    let mut lines = significant_lines(text);
    let (pline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty instance"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "happy" {
        return Err(ParseError::new(pline, "expected 'p happy <n> <m> <k>'"));
    }
    let n = parse_usize(pline, tokens[2], "vertex count")?;
    let m = parse_usize(pline, tokens[3], "edge count")?;
    let k = parse_usize(pline, tokens[4], "color count")?;
    if k == 0 {
        return Err(ParseError::new(pline, "color count must be at least 1"));
    }

    let mut mode: Option<HappinessMode> = None;
    let mut precolor: Vec<(VertexId, Color)> = Vec::new();
    let mut precolored: HashSet<VertexId> = HashSet::new();
    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    let mut seen_edges: HashSet<(VertexId, VertexId)> = HashSet::new();

    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => return Err(ParseError::new(ln, "duplicate header line")),
            "mode" => {
                if mode.is_some() {
                    return Err(ParseError::new(ln, "duplicate mode line"));
                }
                mode = Some(match tokens.get(1).copied() {
                    Some("strict") if tokens.len() == 2 => HappinessMode::Strict,
                    Some("soft") if tokens.len() == 3 => {
                        let rho = parse_rational(tokens[2]).ok_or_else(|| {
                            ParseError::new(ln, format!("invalid fraction '{}'", tokens[2]))
                        })?;
                        HappinessMode::soft(rho).map_err(|e| ParseError::new(ln, e.to_string()))?
                    }
                    Some("hard") if tokens.len() == 3 => {
                        let q = parse_usize(ln, tokens[2], "hard threshold")?;
                        HappinessMode::hard(q).map_err(|e| ParseError::new(ln, e.to_string()))?
                    }
                    _ => {
                        return Err(ParseError::new(
                            ln,
                            "expected 'mode strict', 'mode soft <p>/<q>' or 'mode hard <q>'",
                        ))
                    }
                });
            }
            "v" => {
                if tokens.len() != 3 {
                    return Err(ParseError::new(ln, "expected 'v <id> <color>'"));
                }
                let v = parse_usize(ln, tokens[1], "vertex id")?;
                let c = parse_usize(ln, tokens[2], "color")?;
                if v == 0 || v > n {
                    return Err(ParseError::new(ln, format!("vertex {v} out of range 1..={n}")));
                }
                if c == 0 || c > k {
                    return Err(ParseError::new(ln, format!("color {c} out of range 1..={k}")));
                }
                if !precolored.insert(v) {
                    return Err(ParseError::new(ln, format!("vertex {v} precolored twice")));
                }
                precolor.push((v, c));
            }
            "e" => {
                if tokens.len() != 3 && tokens.len() != 4 {
                    return Err(ParseError::new(ln, "expected 'e <u> <v> [weight]'"));
                }
                let u = parse_usize(ln, tokens[1], "vertex id")?;
                let v = parse_usize(ln, tokens[2], "vertex id")?;
                if u == 0 || u > n {
                    return Err(ParseError::new(ln, format!("vertex {u} out of range 1..={n}")));
                }
                if v == 0 || v > n {
                    return Err(ParseError::new(ln, format!("vertex {v} out of range 1..={n}")));
                }
                if u == v {
                    return Err(ParseError::new(ln, format!("self-loop at vertex {u}")));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::new(ln, format!("duplicate edge ({u}, {v})")));
                }
                let weight = match tokens.get(3) {
                    None => Weight::one(),
                    Some(w) => parse_rational(w).ok_or_else(|| {
                        ParseError::new(ln, format!("invalid weight '{w}'"))
                    })?,
                };
                edges.push((u, v, weight));
            }
            other => {
                return Err(ParseError::new(ln, format!("unknown record '{other}'")));
            }
        }
    }
    if edges.len() != m {
        return Err(ParseError::new(
            0,
            format!("header declares {m} edges, file has {}", edges.len()),
        ));
    }
    let graph = Graph::new_weighted(n, edges).map_err(|e| ParseError::new(0, e.to_string()))?;
    let spec = ColorSpec::new(k, n, &precolor).map_err(|e| ParseError::new(0, e.to_string()))?;
    Ok((graph, spec, mode.unwrap_or(HappinessMode::Strict)))
}

/// Canonical text form of a happy-coloring instance.
pub fn write_instance(graph: &Graph, spec: &ColorSpec, mode: HappinessMode) -> String {
    let mut out = String::new();
    writeln!(out, "p happy {} {} {}", graph.n(), graph.m(), spec.k()).unwrap();
    match mode {
        HappinessMode::Strict => {}
        HappinessMode::Soft(rho) => {
            writeln!(out, "mode soft {}/{}", rho.numer(), rho.denom()).unwrap()
        }
        HappinessMode::Hard(q) => writeln!(out, "mode hard {q}").unwrap(),
    }
    for (v, c) in spec.precolored() {
        writeln!(out, "v {v} {c}").unwrap();
    }
    for e in graph.edges() {
        if e.weight == Weight::one() {
            writeln!(out, "e {} {}", e.u, e.v).unwrap();
        } else {
            writeln!(out, "e {} {} {}", e.u, e.v, format_rational(e.weight)).unwrap();
        }
    }
    out
}

/// Parses a multiway-cut instance file.
pub fn parse_multiway_cut(text: &str) -> Result<MultiwayCutInstance, ParseError> {
    let mut lines = significant_lines(text);
    let (pline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty instance"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "mwc" {
        return Err(ParseError::new(pline, "expected 'p mwc <n> <m> <t>'"));
    }
    let n = parse_usize(pline, tokens[2], "vertex count")?;
    let m = parse_usize(pline, tokens[3], "edge count")?;
    let t = parse_usize(pline, tokens[4], "terminal count")?;

    let mut terminals: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut seen_edges: HashSet<(VertexId, VertexId)> = HashSet::new();
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "t" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(ln, "expected 't <id>'"));
                }
                let v = parse_usize(ln, tokens[1], "terminal id")?;
                if v == 0 || v > n {
                    return Err(ParseError::new(ln, format!("vertex {v} out of range 1..={n}")));
                }
                if terminals.contains(&v) {
                    return Err(ParseError::new(ln, format!("duplicate terminal {v}")));
                }
                terminals.push(v);
            }
            "e" => {
                if tokens.len() != 3 {
                    return Err(ParseError::new(ln, "expected 'e <u> <v>'"));
                }
                let u = parse_usize(ln, tokens[1], "vertex id")?;
                let v = parse_usize(ln, tokens[2], "vertex id")?;
                if u == 0 || u > n || v == 0 || v > n {
                    return Err(ParseError::new(ln, "vertex out of range"));
                }
                if u == v {
                    return Err(ParseError::new(ln, format!("self-loop at vertex {u}")));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(ParseError::new(ln, format!("duplicate edge ({u}, {v})")));
                }
                edges.push((u, v));
            }
            other => return Err(ParseError::new(ln, format!("unknown record '{other}'"))),
        }
    }
    if edges.len() != m {
        return Err(ParseError::new(
            0,
            format!("header declares {m} edges, file has {}", edges.len()),
        ));
    }
    if terminals.len() != t {
        return Err(ParseError::new(
            0,
            format!("header declares {t} terminals, file has {}", terminals.len()),
        ));
    }
    let graph = Graph::new(n, &edges).map_err(|e| ParseError::new(0, e.to_string()))?;
    MultiwayCutInstance::new(graph, terminals).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Canonical text form of a multiway-cut instance.
pub fn write_multiway_cut(instance: &MultiwayCutInstance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    writeln!(
        out,
        "p mwc {} {} {}",
        g.n(),
        g.m(),
        instance.terminals.len()
    )
    .unwrap();
    for &t in &instance.terminals {
        writeln!(out, "t {t}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u, e.v).unwrap();
    }
    out
}

/// Erdos-Renyi instance: each pair is an edge with probability
/// `edge_probability`, each vertex is precolored uniformly with
/// probability `reveal_fraction`. Deterministic for a fixed seed.
pub fn gen_random(
    n: usize,
    edge_probability: f64,
    k: usize,
    reveal_fraction: f64,
    seed: u64,
) -> (Graph, ColorSpec) {
    assert!((0.0..=1.0).contains(&edge_probability));
    assert!((0.0..=1.0).contains(&reveal_fraction));
    assert!(k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = sample_pairs(n, edge_probability, &mut rng);
    let graph = Graph::new(n, &edges).expect("sampler emits distinct pairs");
    let mut precolor = Vec::new();
    for v in 1..=n {
        if rng.random_bool(reveal_fraction) {
            precolor.push((v, rng.random_range(1..=k)));
        }
    }
    let spec = ColorSpec::new(k, n, &precolor).expect("colors in range");
    (graph, spec)
}

/// Samples pairs from the `u < v` triangle with geometric gap skipping, so
/// sparse graphs cost O(n + m) instead of O(n^2).
fn sample_pairs(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    let total: u128 = (n as u128) * (n as u128 - 1) / 2;
    if p >= 1.0 {
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges.push((u, v));
            }
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let mut pos: u128 = 0;
    let mut row = 1usize; // current u
    let mut row_base: u128 = 0; // first pair index of this row
    loop {
        let u: f64 = rng.random();
        let gap = if u <= 0.0 {
            break;
        } else {
            (u.ln() / log_q).floor()
        };
        if !gap.is_finite() || gap >= total as f64 {
            break;
        }
        pos += gap as u128;
        if pos >= total {
            break;
        }
        while pos >= row_base + (n - row) as u128 {
            row_base += (n - row) as u128;
            row += 1;
        }
        let v = row + 1 + (pos - row_base) as usize;
        edges.push((row, v));
        pos += 1;
        if pos >= total {
            break;
        }
    }
    edges
}

/// Planted-partition instance: `k` balanced groups (round-robin
/// membership), intra-group edges with probability `p_in`, cross edges
/// with `p_out <= p_in`; precolors are revealed from the planted
/// assignment.
pub fn gen_planted(
    n: usize,
    k: usize,
    p_in: f64,
    p_out: f64,
    reveal_fraction: f64,
    seed: u64,
) -> (Graph, ColorSpec) {
    assert!(k >= 1);
    assert!((0.0..=1.0).contains(&p_in));
    assert!((0.0..=1.0).contains(&p_out));
    assert!(p_in >= p_out, "planted model needs p_in >= p_out");
    assert!((0.0..=1.0).contains(&reveal_fraction));
    let group = |v: VertexId| (v - 1) % k + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            let p = if group(u) == group(v) { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("distinct pairs");
    let mut precolor = Vec::new();
    for v in 1..=n {
        if rng.random_bool(reveal_fraction) {
            precolor.push((v, group(v)));
        }
    }
    let spec = ColorSpec::new(k, n, &precolor).expect("colors in range");
    (graph, spec)
}

/// Relabels vertices with a seeded random permutation. Returns the
/// permuted instance and `perm`, where `perm[old] = new`.
pub fn permute_instance(
    graph: &Graph,
    spec: &ColorSpec,
    seed: u64,
) -> (Graph, ColorSpec, Vec<VertexId>) {
    let n = graph.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<VertexId> = (0..=n).collect();
    // Fisher-Yates over slots 1..=n.
    for i in (2..=n).rev() {
        let j = rng.random_range(1..=i);
        perm.swap(i, j);
    }
    let edges = graph
        .edges()
        .iter()
        .map(|e| (perm[e.u], perm[e.v], e.weight))
        .collect();
    let graph2 = Graph::new_weighted(n, edges).expect("permutation keeps validity");
    let precolor: Vec<(VertexId, Color)> =
        spec.precolored().map(|(v, c)| (perm[v], c)).collect();
    let spec2 = ColorSpec::new(spec.k(), n, &precolor).expect("permutation keeps validity");
    (graph2, spec2, perm)
}

/// Maps a coloring of the permuted instance back to the original ids.
pub fn unpermute_coloring(coloring: &[Color], perm: &[VertexId]) -> Vec<Color> {
    let mut out = vec![0; coloring.len()];
    for v in 1..perm.len() {
        out[v] = coloring[perm[v]];
    }
    out
}
