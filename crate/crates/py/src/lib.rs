//! Python bindings: `Instance` wraps a graph plus partial coloring and
//! exposes the solvers; module functions cover parsing, generation and the
//! soft-gadget parameters.
//!
//! Usage from Python:
//!
//!     import happy_py
//!     inst = happy_py.Instance(3, [(1, 2), (2, 3)], k=2, precolor={1: 1, 3: 2})
//!     sol = inst.growth()
//!     sol.objective, sol.coloring

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use happy_core::io;
use happy_core::reductions;
use happy_core::*;
use num::rational::Rational64;

fn value_err(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn parse_mode_str(mode: &str) -> PyResult<HappinessMode> {
    let tokens: Vec<&str> = mode.split_whitespace().collect();
    match tokens.as_slice() {
        ["strict"] => Ok(HappinessMode::Strict),
        ["soft", frac] => {
            let rho = io::parse_rational(frac)
                .ok_or_else(|| value_err(format!("invalid fraction '{frac}'")))?;
            HappinessMode::soft(rho).map_err(value_err)
        }
        ["hard", q] => {
            let q: usize = q
                .parse()
                .map_err(|_| value_err(format!("invalid threshold '{q}'")))?;
            HappinessMode::hard(q).map_err(value_err)
        }
        _ => Err(value_err(
            "mode must be 'strict', 'soft <p>/<q>' or 'hard <q>'",
        )),
    }
}

fn mode_string(mode: HappinessMode) -> String {
    match mode {
        HappinessMode::Strict => "strict".into(),
        HappinessMode::Soft(r) => format!("soft {}/{}", r.numer(), r.denom()),
        HappinessMode::Hard(q) => format!("hard {q}"),
    }
}

fn weight_string(w: Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

fn weight_float(w: Weight) -> f64 {
    *w.numer() as f64 / *w.denom() as f64
}

/// A solver result: objective value, total coloring and run counters.
#[pyclass(frozen)]
pub struct PySolution {
    #[pyo3(get)]
    algorithm: String,
    #[pyo3(get)]
    problem: String,
    /// Objective as a float (exact for vertex counts).
    #[pyo3(get)]
    objective: f64,
    /// Objective in exact rational notation.
    #[pyo3(get)]
    objective_exact: String,
    /// Colors indexed by vertex id, entry 0 unused (0).
    #[pyo3(get)]
    coloring: Vec<usize>,
    counters: Option<GrowthCounters>,
    division: Option<DivisionCounters>,
}

#[pymethods]
impl PySolution {
    /// Run counters as a dict (growth ledgers or division weights), or
    /// None.
    fn counters<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        if let Some(c) = &self.counters {
            let d = PyDict::new(py);
            d.set_item("h_org", c.h_org)?;
            d.set_item("h_new", c.h_new)?;
            d.set_item("l_org", c.l_org)?;
            d.set_item("lu_org", c.lu_org)?;
            d.set_item("lu_new", c.lu_new)?;
            d.set_item("p_steps", c.p_steps)?;
            d.set_item("lh_steps", c.lh_steps)?;
            d.set_item("lu_steps", c.lu_steps)?;
            d.set_item("max_lu_per_p_step", c.max_lu_per_p_step)?;
            d.set_item("max_lu_per_lh_step", c.max_lu_per_lh_step)?;
            d.set_item("max_lu_per_lu_step", c.max_lu_per_lu_step)?;
            return Ok(Some(d));
        }
        if let Some(c) = &self.division {
            let d = PyDict::new(py);
            d.set_item("w_org", weight_string(c.w_org))?;
            d.set_item("w_prime", weight_string(c.w_prime))?;
            d.set_item("w_dprime", weight_string(c.w_dprime))?;
            d.set_item("bound", weight_string(c.bound()))?;
            return Ok(Some(d));
        }
        Ok(None)
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(problem='{}', algorithm='{}', objective={})",
            self.problem, self.algorithm, self.objective_exact
        )
    }
}

fn convert(sol: Solution) -> PySolution {
    let (counters, division) = match &sol.counters {
        Counters::Growth(g) => (Some(g.clone()), None),
        Counters::Division(d) => (None, Some(d.clone())),
        Counters::None => (None, None),
    };
    PySolution {
        algorithm: sol.algorithm.clone(),
        problem: sol.kind.to_string(),
        objective: weight_float(sol.objective.as_weight()),
        objective_exact: sol.objective.to_string(),
        coloring: sol.coloring,
        counters,
        division,
    }
}

/// A happy-coloring instance: graph, color count, partial precoloring and
/// happiness mode.
#[pyclass]
pub struct Instance {
    graph: Graph,
    spec: ColorSpec,
    mode: HappinessMode,
}

#[pymethods]
impl Instance {
    /// Instance(n, edges, k, precolor=None, mode="strict")
    ///
    /// `edges` is a list of `(u, v)` or `(u, v, weight)` tuples with
    /// 1-based vertex ids; weights are ints or strings like "3/2" or
    /// "0.5". `precolor` maps vertex id to color in 1..=k.
    #[new]
    #[pyo3(signature = (n, edges, k, precolor = None, mode = "strict"))]
    fn new(
        n: usize,
        edges: Vec<Bound<'_, PyTuple>>,
        k: usize,
        precolor: Option<std::collections::BTreeMap<usize, usize>>,
        mode: &str,
    ) -> PyResult<Self> {
        let mut weighted: Vec<(VertexId, VertexId, Weight)> = Vec::with_capacity(edges.len());
        for tuple in &edges {
            match tuple.len() {
                2 => {
                    let (u, v): (usize, usize) = tuple.extract()?;
                    weighted.push((u, v, Weight::from_integer(1)));
                }
                3 => {
                    let u: usize = tuple.get_item(0)?.extract()?;
                    let v: usize = tuple.get_item(1)?.extract()?;
                    let w_item = tuple.get_item(2)?;
                    let w = if let Ok(i) = w_item.extract::<i64>() {
                        Weight::from_integer(i)
                    } else {
                        let s: String = w_item.extract()?;
                        io::parse_rational(&s)
                            .ok_or_else(|| value_err(format!("invalid weight '{s}'")))?
                    };
                    weighted.push((u, v, w));
                }
                len => return Err(value_err(format!("edge tuple of length {len}"))),
            }
        }
        let graph = Graph::new_weighted(n, weighted).map_err(value_err)?;
        let assignments: Vec<(VertexId, Color)> =
            precolor.unwrap_or_default().into_iter().collect();
        let spec = ColorSpec::new(k, n, &assignments).map_err(value_err)?;
        let mode = parse_mode_str(mode)?;
        Ok(Instance { graph, spec, mode })
    }

    #[getter]
    fn n(&self) -> usize {
        self.graph.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.graph.m()
    }

    #[getter]
    fn k(&self) -> usize {
        self.spec.k()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    #[getter]
    fn mode(&self) -> String {
        mode_string(self.mode)
    }

    /// Precoloring as a dict {vertex: color}.
    #[getter]
    fn precolor(&self) -> std::collections::BTreeMap<usize, usize> {
        self.spec.precolored().collect()
    }

    /// Canonical instance-file text.
    fn write(&self) -> String {
        io::write_instance(&self.graph, &self.spec, self.mode)
    }

    /// Greedy 1/k-approximation for happy vertices (any mode).
    fn greedy(&self) -> PySolution {
        convert(greedy_mhv(&self.graph, &self.spec, self.mode))
    }

    /// Subset-growth approximation for happy vertices; dispatches on the
    /// instance mode. `force=True` skips the hard-threshold feasibility
    /// check.
    #[pyo3(signature = (force = false))]
    fn growth(&self, force: bool) -> PyResult<PySolution> {
        let sol = match self.mode {
            HappinessMode::Strict => growth_mhv(&self.graph, &self.spec),
            HappinessMode::Soft(rho) => {
                growth_soft_mhv(&self.graph, &self.spec, rho).map_err(value_err)?
            }
            HappinessMode::Hard(q) => {
                if force {
                    growth_hard_mhv_forced(&self.graph, &self.spec, q).map_err(value_err)?
                } else {
                    growth_hard_mhv(&self.graph, &self.spec, q).map_err(value_err)?
                }
            }
        };
        Ok(convert(sol))
    }

    /// 1/2-approximate division algorithm for weighted happy edges.
    fn division(&self) -> PySolution {
        convert(division_mhe(&self.graph, &self.spec))
    }

    /// Exact two-color solver; `problem` is "mhv" or "mhe".
    fn exact2(&self, problem: &str) -> PyResult<PySolution> {
        match problem {
            "mhv" => exact_2mhv(&self.graph, &self.spec)
                .map(convert)
                .map_err(value_err),
            "mhe" => exact_2mhe(&self.graph, &self.spec)
                .map(convert)
                .map_err(value_err),
            other => Err(value_err(format!("unknown problem '{other}'"))),
        }
    }

    /// Brute-force oracle; `problem` is "mhv" (uses the instance mode) or
    /// "mhe". Raises when the enumeration exceeds `budget`.
    #[pyo3(signature = (problem, budget = 1 << 20))]
    fn brute(&self, problem: &str, budget: u64) -> PyResult<PySolution> {
        match problem {
            "mhv" => brute_force_mhv(&self.graph, &self.spec, self.mode, budget)
                .map(convert)
                .map_err(value_err),
            "mhe" => brute_force_mhe(&self.graph, &self.spec, budget)
                .map(convert)
                .map_err(value_err),
            other => Err(value_err(format!("unknown problem '{other}'"))),
        }
    }

    /// Happy-vertex count of a total coloring (list indexed by vertex,
    /// entry 0 ignored) under the instance mode.
    fn count_happy_vertices(&self, coloring: Vec<usize>) -> PyResult<usize> {
        graph::validate_total(&self.graph, &coloring, self.spec.k()).map_err(value_err)?;
        Ok(count_happy_vertices(&self.graph, &coloring, self.mode))
    }

    /// Happy-edge weight of a total coloring, as an exact rational string.
    fn happy_edge_weight(&self, coloring: Vec<usize>) -> PyResult<String> {
        graph::validate_total(&self.graph, &coloring, self.spec.k()).map_err(value_err)?;
        Ok(weight_string(happy_edge_weight(&self.graph, &coloring)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, m={}, k={}, mode='{}')",
            self.graph.n(),
            self.graph.m(),
            self.spec.k(),
            mode_string(self.mode)
        )
    }
}

/// Parses instance-file text into an Instance.
#[pyfunction]
fn parse_instance(text: &str) -> PyResult<Instance> {
    let (graph, spec, mode) = io::parse_instance(text).map_err(value_err)?;
    Ok(Instance { graph, spec, mode })
}

/// Seeded Erdos-Renyi instance with uniform precolors.
#[pyfunction]
#[pyo3(signature = (n, p, k, reveal = 0.0, seed = 0))]
fn gen_random(n: usize, p: f64, k: usize, reveal: f64, seed: u64) -> PyResult<Instance> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&reveal) || k == 0 {
        return Err(value_err("parameters out of range"));
    }
    let (graph, spec) = io::gen_random(n, p, k, reveal, seed);
    Ok(Instance {
        graph,
        spec,
        mode: HappinessMode::Strict,
    })
}

/// Seeded planted-partition instance; precolors reveal the planted groups.
#[pyfunction]
#[pyo3(signature = (n, k, p_in, p_out, reveal = 0.0, seed = 0))]
fn gen_planted(
    n: usize,
    k: usize,
    p_in: f64,
    p_out: f64,
    reveal: f64,
    seed: u64,
) -> PyResult<Instance> {
    if !(0.0..=1.0).contains(&p_in)
        || !(0.0..=1.0).contains(&p_out)
        || !(0.0..=1.0).contains(&reveal)
        || k == 0
        || p_in < p_out
    {
        return Err(value_err("parameters out of range (needs p_in >= p_out)"));
    }
    let (graph, spec) = io::gen_planted(n, k, p_in, p_out, reveal, seed);
    Ok(Instance {
        graph,
        spec,
        mode: HappinessMode::Strict,
    })
}

/// Gadget parameters (k, h) for the soft-threshold hardness reduction,
/// from a fraction like "1/2".
#[pyfunction]
fn soft_params(rho: &str) -> PyResult<(usize, usize)> {
    let rho: Rational64 =
        io::parse_rational(rho).ok_or_else(|| value_err(format!("invalid fraction '{rho}'")))?;
    reductions::soft_params(rho).map_err(value_err)
}

#[pymodule]
fn happy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(parse_instance, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(gen_planted, m)?)?;
    m.add_function(wrap_pyfunction!(soft_params, m)?)?;
    Ok(())
}
