use clap::{Args, ValueEnum};
use happy_core::io::{gen_random, write_instance};
use happy_core::reductions::{
    mhe_to_hardmhv, mhe_to_mhv, mhe_to_softmhv, multiway_cut_to_3mhe, pad_3mhe_to_kmhe,
    verify_reduction, MultiwayCutInstance, Verdict,
};
use happy_core::solvers::mhe::{brute_force_mhe, division_mhe, exact_2mhe};
use happy_core::solvers::mhv::{brute_force_mhv, exact_2mhv, greedy_mhv, growth_mhv};
use happy_core::*;
use num::rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ratios,
    Lemmas,
    Exact,
    Reductions,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest instance size to generate.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Number of instances per property.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Enumeration budget for the oracles.
    #[arg(long, default_value_t = 1 << 22)]
    budget: u64,
}

struct Sampler {
    base: u64,
    n_max: usize,
}

impl Sampler {
    fn instance(&self, t: u64, k: usize) -> (Graph, ColorSpec) {
        let reveals = [0.0, 0.2, 0.5, 0.8, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(self.base ^ t.wrapping_mul(0x9e37_79b9));
        let n = rng.random_range(2..=self.n_max.max(2));
        let p = rng.random_range(0.15..0.65);
        let reveal = reveals[rng.random_range(0..reveals.len())];
        gen_random(n, p, k, reveal, self.base.wrapping_add(t))
    }

    fn connected(&self, t: u64, k: usize) -> (Graph, ColorSpec) {
        let reveals = [0.0, 0.2, 0.5, 0.8, 1.0];
        let mut t = t;
        loop {
            let mut rng = ChaCha8Rng::seed_from_u64(self.base ^ t.wrapping_mul(0x9e37_79b9));
            let n = rng.random_range(4..=self.n_max.max(4));
            let p = rng.random_range(0.15..0.65);
            let reveal = reveals[rng.random_range(0..reveals.len())];
            let (g, spec) = gen_random(n, p, k, reveal, self.base.wrapping_add(t));
            if g.is_connected() && g.max_degree() >= 2 {
                return (g, spec);
            }
            t = t.wrapping_add(0x0101_0101);
        }
    }

    fn weighted(&self, t: u64, k: usize) -> (Graph, ColorSpec) {
        let (g0, spec) = self.instance(t, k);
        let mut rng = ChaCha8Rng::seed_from_u64(self.base ^ t.wrapping_mul(0x51ed));
        let edges: Vec<(usize, usize, Weight)> = g0
            .edges()
            .iter()
            .map(|e| (e.u, e.v, Weight::from_integer(rng.random_range(1..=5))))
            .collect();
        (Graph::new_weighted(g0.n(), edges).unwrap(), spec)
    }
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let sampler = Sampler {
        base: args.seed.wrapping_mul(0x2545_f491_4f6c_dd1d),
        n_max: args.n,
    };
    match args.suite {
        Suite::Exact => suite_exact(&args, &sampler),
        Suite::Ratios => suite_ratios(&args, &sampler),
        Suite::Lemmas => suite_lemmas(&args, &sampler),
        Suite::Reductions => suite_reductions(&args, &sampler),
    }
}

fn counterexample(graph: &Graph, spec: &ColorSpec, mode: HappinessMode, what: &str) -> CliError {
    eprintln!("counterexample ({what}):");
    eprint!("{}", write_instance(graph, spec, mode));
    CliError::suite(format!("property violated: {what}"))
}

fn suite_exact(args: &VerifyArgs, sampler: &Sampler) -> Result<(), CliError> {
    let mut checked = 0;
    for t in 0..args.trials as u64 {
        let (graph, spec) = sampler.instance(t, 2);
        let bv = match brute_force_mhv(&graph, &spec, HappinessMode::Strict, args.budget) {
            Ok(s) => s,
            Err(SolverError::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(CliError::contract(e.to_string())),
        };
        let ev = exact_2mhv(&graph, &spec).map_err(|e| CliError::contract(e.to_string()))?;
        if ev.objective != bv.objective {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "exact_2mhv != brute force",
            ));
        }
        let be = match brute_force_mhe(&graph, &spec, args.budget) {
            Ok(s) => s,
            Err(SolverError::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(CliError::contract(e.to_string())),
        };
        let ee = exact_2mhe(&graph, &spec).map_err(|e| CliError::contract(e.to_string()))?;
        if ee.objective != be.objective {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "exact_2mhe != brute force",
            ));
        }
        checked += 1;
    }
    println!("exact: {checked}/{} instances, exact_2mhv == brute and exact_2mhe == brute", args.trials);
    println!("suite exact: all properties hold");
    Ok(())
}

fn suite_ratios(args: &VerifyArgs, sampler: &Sampler) -> Result<(), CliError> {
    // Greedy >= OPT/k across modes.
    let mut greedy_checked = 0;
    let mut worst_greedy = 1.0f64;
    for t in 0..args.trials as u64 {
        let k = [2, 3, 4][(t % 3) as usize];
        let (graph, spec) = sampler.instance(t, k);
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x6eed);
        let mode = match t % 3 {
            0 => HappinessMode::Strict,
            1 => HappinessMode::Soft(Rational64::new(rng.random_range(1..5), 5)),
            _ => HappinessMode::Hard(rng.random_range(1..=graph.max_degree().max(1))),
        };
        let sol = greedy_mhv(&graph, &spec, mode);
        let opt = match brute_force_mhv(&graph, &spec, mode, args.budget) {
            Ok(s) => s,
            Err(SolverError::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(CliError::contract(e.to_string())),
        };
        let (s, o) = (
            sol.objective.vertices().unwrap(),
            opt.objective.vertices().unwrap(),
        );
        if s * k < o {
            return Err(counterexample(&graph, &spec, mode, "greedy below OPT/k"));
        }
        if o > 0 {
            worst_greedy = worst_greedy.min(s as f64 / o as f64);
        }
        greedy_checked += 1;
    }
    println!("ratios/greedy: {greedy_checked} instances hold, worst SOL/OPT = {worst_greedy:.4}");

    // Growth >= OPT / (d(d-1)(d+1)) on connected instances, k = 3.
    let mut growth_checked = 0;
    let mut worst_growth = 1.0f64;
    for t in 0..args.trials as u64 {
        let (graph, spec) = sampler.connected(t.wrapping_add(1_000_000), 3);
        let d = graph.max_degree();
        let sol = growth_mhv(&graph, &spec);
        let opt = match brute_force_mhv(&graph, &spec, HappinessMode::Strict, args.budget) {
            Ok(s) => s,
            Err(SolverError::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(CliError::contract(e.to_string())),
        };
        let (s, o) = (
            sol.objective.vertices().unwrap() as u128,
            opt.objective.vertices().unwrap() as u128,
        );
        if s * ((d * (d - 1) * (d + 1)) as u128) < o {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "growth below OPT/(d(d-1)(d+1))",
            ));
        }
        if o > 0 {
            worst_growth = worst_growth.min(s as f64 / o as f64);
        }
        growth_checked += 1;
    }
    println!("ratios/growth: {growth_checked} instances hold, worst SOL/OPT = {worst_growth:.4}");

    // Division >= bound/2 everywhere and >= OPT/2 when the oracle runs.
    let mut division_checked = 0;
    let mut worst_division = 1.0f64;
    let two = Rational64::from_integer(2);
    for t in 0..args.trials as u64 {
        let k = [2, 3, 4][(t % 3) as usize];
        let (graph, spec) = sampler.weighted(t.wrapping_add(2_000_000), k);
        let sol = division_mhe(&graph, &spec);
        let bound = sol.counters.division().unwrap().bound();
        if sol.objective.as_weight() * two < bound {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "division below half its bound",
            ));
        }
        if let Ok(opt) = brute_force_mhe(&graph, &spec, args.budget) {
            if sol.objective.as_weight() * two < opt.objective.as_weight() {
                return Err(counterexample(
                    &graph,
                    &spec,
                    HappinessMode::Strict,
                    "division below OPT/2",
                ));
            }
            let o = opt.objective.as_weight();
            if o > Weight::from_integer(0) {
                let r = sol.objective.as_weight() / o;
                worst_division =
                    worst_division.min(*r.numer() as f64 / *r.denom() as f64);
            }
        }
        division_checked += 1;
    }
    println!(
        "ratios/division: {division_checked} instances hold, worst SOL/OPT = {worst_division:.4}"
    );
    println!("suite ratios: all properties hold");
    Ok(())
}

fn suite_lemmas(args: &VerifyArgs, sampler: &Sampler) -> Result<(), CliError> {
    // Unrestricted sampling: low-degree instances exercise the
    // vacuous-skip path (the degree-dependent caps mean nothing below
    // max degree 2).
    let mut checked = 0;
    let mut vacuous = 0;
    for t in 0..args.trials as u64 {
        let (graph, spec) = sampler.instance(t, 3);
        let d = graph.max_degree();
        let sol = growth_mhv(&graph, &spec);
        let c = sol.counters.growth().unwrap();
        if let Ok(opt) = brute_force_mhv(&graph, &spec, HappinessMode::Strict, args.budget) {
            if opt.objective.vertices().unwrap() > c.h_org + (d + 1) * (c.l_org - c.lu_org) {
                return Err(counterexample(
                    &graph,
                    &spec,
                    HappinessMode::Strict,
                    "OPT exceeds H_org + (d+1)(L_org - Lu_org)",
                ));
            }
        }
        if d < 2 {
            vacuous += 1;
            continue;
        }
        if c.lu_new > d * (d - 2) * c.h_new {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "Lu_new exceeds d(d-2) H_new",
            ));
        }
        if c.max_lu_per_p_step > d * (d - 2)
            || c.max_lu_per_lh_step > (d - 1) * (d - 2)
            || c.max_lu_per_lu_step > 0
        {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "per-step Lu generation cap violated",
            ));
        }
        if c.h_new * d * (d - 1) < c.l_org - c.lu_org {
            return Err(counterexample(
                &graph,
                &spec,
                HappinessMode::Strict,
                "H_new below (L_org - Lu_org)/(d(d-1))",
            ));
        }
        checked += 1;
    }
    println!("lemmas: {checked} runs hold, {vacuous} vacuous-skipped (max degree < 2)");
    println!("suite lemmas: all properties hold");
    Ok(())
}

fn suite_reductions(args: &VerifyArgs, sampler: &Sampler) -> Result<(), CliError> {
    let mut violations: Vec<String> = Vec::new();
    let trials = args.trials as u64;

    let mut held = 0;
    for t in 0..trials {
        let n = 3 + (t % 4) as usize;
        let (graph, _) = sampler.instance(t.wrapping_add(10), 2);
        let graph = if graph.n() >= n { graph } else { continue };
        let mc = match MultiwayCutInstance::new(graph, vec![1, 2, 3]) {
            Ok(mc) => mc,
            Err(_) => continue,
        };
        let out = multiway_cut_to_3mhe(&mc).unwrap();
        match verify_reduction(&out, args.budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => {
                violations.push("mwc3 -> 3mhe".into());
                eprint!("{}", happy_core::io::write_multiway_cut(&mc));
            }
            Verdict::Skipped { .. } => {}
        }
    }
    println!("reductions/mwc3->mhe3: {held} hold");

    let mut held = 0;
    let mut mono_viol = 0;
    for t in 0..trials {
        let (graph, spec) = sampler.instance(t.wrapping_add(7_000), 3);
        if graph.n() > 6 || spec.precolored_count() == 0 {
            continue;
        }
        let out = mhe_to_mhv(&graph, &spec).unwrap();
        match verify_reduction(&out, args.budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => {
                if spec.used_colors().len() < 2 {
                    mono_viol += 1;
                    if mono_viol == 1 {
                        eprintln!("counterexample (mhe->mhv on a single-color precoloring):");
                        eprint!("{}", write_instance(&graph, &spec, HappinessMode::Strict));
                    }
                } else {
                    violations.push("mhe3 -> mhv (multi-color source)".into());
                }
            }
            Verdict::Skipped { .. } => {}
        }
    }
    if mono_viol > 0 {
        violations.push(format!(
            "mhe3 -> mhv: {mono_viol} single-color sources (apex of the lone color is happy; OPT_MHV = OPT_MHE + 1)"
        ));
    }
    println!("reductions/mhe3->mhv: {held} hold, {mono_viol} single-color violations");

    let mut held = 0;
    for t in 0..trials {
        let (graph, spec) = sampler.instance(t.wrapping_add(11_000), 3);
        if graph.n() > 6 || graph.max_degree() == 0 {
            continue;
        }
        let out = mhe_to_hardmhv(&graph, &spec).unwrap();
        match verify_reduction(&out, args.budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => violations.push("mhe3 -> hardmhv".into()),
            Verdict::Skipped { .. } => {}
        }
    }
    println!("reductions/mhe3->hardmhv: {held} hold");

    let mut held = 0;
    for t in 0..trials {
        let (graph, spec) = sampler.instance(t.wrapping_add(13_000), 3);
        if graph.n() > 6 || spec.class(1).is_empty() {
            continue;
        }
        let out = pad_3mhe_to_kmhe(&graph, &spec, 3 + (t % 4) as usize).unwrap();
        match verify_reduction(&out, args.budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => violations.push("pad 3mhe -> kmhe".into()),
            Verdict::Skipped { .. } => {}
        }
    }
    println!("reductions/pad->kmhe: {held} hold");

    let mut held = 0;
    let mut edgeless_viol = 0;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0xf1f1);
        let n = rng.random_range(1..=3);
        let (graph, spec) = gen_random(n, 0.6, 3, rng.random_range(0.3..1.0), t ^ 0xf2f2);
        let rho = [
            Rational64::new(1, 2),
            Rational64::new(2, 3),
            Rational64::new(1, 3),
        ][(t % 3) as usize];
        let out = mhe_to_softmhv(&graph, &spec, rho).unwrap();
        match verify_reduction(&out, args.budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => {
                if graph.m() == 0 {
                    edgeless_viol += 1;
                } else {
                    violations.push("mhe3 -> softmhv (source with edges)".into());
                }
            }
            Verdict::Skipped { .. } => {}
        }
    }
    if edgeless_viol > 0 {
        violations.push(format!(
            "mhe3 -> softmhv: {edgeless_viol} edgeless sources (isolated vertices are soft-happy; n* = n)"
        ));
    }
    println!("reductions/mhe3->softmhv: {held} hold, {edgeless_viol} edgeless violations");

    if violations.is_empty() {
        println!("suite reductions: all value maps hold");
        Ok(())
    } else {
        println!("suite reductions: violations detected");
        for v in &violations {
            println!("  {v}");
        }
        Err(CliError::suite(format!(
            "{} value-map violations (known degenerate populations)",
            violations.len()
        )))
    }
}
