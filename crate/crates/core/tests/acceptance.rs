//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line (run with `-- --nocapture` to see them). Tolerances are exact
//! (integer / rational comparisons) except where a criterion states a
//! wall-clock or memory budget.

mod common;

use std::time::Instant;

use happy_core::io::{gen_random, parse_instance, write_instance};
use happy_core::reductions::{
    mhe_to_hardmhv, mhe_to_mhv, mhe_to_softmhv, multiway_cut_to_3mhe, pad_3mhe_to_kmhe,
    soft_params, verify_reduction, MultiwayCutInstance, Verdict,
};
use happy_core::*;
use num::rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_BUDGET: u64 = 1 << 22;

fn vertices(sol: &Solution) -> usize {
    sol.objective.vertices().expect("vertex objective")
}

/// Criterion 1: exact two-color solvers equal brute force on >= 500 random
/// instances (n <= 12, m <= 30, k = 2, reveal fractions including 0 and 1),
/// within 30 seconds.
#[test]
fn criterion_01_oracle_exactness() {
    let start = Instant::now();
    let reveals = [0.0, 0.1, 0.3, 0.6, 1.0];
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 500 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=12);
        let p = rng.random_range(0.05..0.5);
        let reveal = reveals[(seed % reveals.len() as u64) as usize];
        let (graph, spec) = gen_random(n, p, 2, reveal, seed);
        if graph.m() > 30 {
            continue;
        }
        let bv = brute_force_mhv(&graph, &spec, HappinessMode::Strict, ORACLE_BUDGET).unwrap();
        let ev = exact_2mhv(&graph, &spec).unwrap();
        assert_eq!(
            ev.objective,
            bv.objective,
            "2-MHV mismatch on\n{}",
            write_instance(&graph, &spec, HappinessMode::Strict)
        );
        let be = brute_force_mhe(&graph, &spec, ORACLE_BUDGET).unwrap();
        let ee = exact_2mhe(&graph, &spec).unwrap();
        assert_eq!(
            ee.objective,
            be.objective,
            "2-MHE mismatch on\n{}",
            write_instance(&graph, &spec, HappinessMode::Strict)
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "exactness sweep took {elapsed:?}"
    );
    println!(
        "criterion 01 oracle-exactness: PASS ({checked} instances, both solvers exact, {elapsed:?})"
    );
}

/// Criterion 2: greedy is a 1/k-approximation on >= 500 random instances
/// across all modes (exact integer comparison, no counterexample allowed).
#[test]
fn criterion_02_greedy_ratio() {
    let mut checked = 0;
    let mut seed = 10_000u64;
    while checked < 500 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = [2, 3, 4][(seed % 3) as usize];
        let (graph, spec) = common::random_instance(seed, 10, k);
        let mode = match seed % 3 {
            0 => HappinessMode::Strict,
            1 => HappinessMode::Soft(Rational64::new(rng.random_range(1..5), 5)),
            _ => HappinessMode::Hard(rng.random_range(1..=graph.max_degree().max(1))),
        };
        let sol = greedy_mhv(&graph, &spec, mode);
        let opt = brute_force_mhv(&graph, &spec, mode, ORACLE_BUDGET).unwrap();
        assert!(
            vertices(&sol) * k >= vertices(&opt),
            "greedy below OPT/k on\n{}",
            write_instance(&graph, &spec, mode)
        );
        checked += 1;
    }
    println!("criterion 02 greedy-ratio: PASS ({checked} instances, greedy >= OPT/k)");
}

/// Criterion 3: growth achieves at least
/// `OPT / (max_degree (max_degree - 1)(max_degree + 1))` on >= 500 random
/// connected instances with k = 3 and max degree >= 2.
#[test]
fn criterion_03_growth_ratio() {
    let mut worst_num = 1u128;
    let mut worst_den = 1u128;
    for t in 0..500u64 {
        let (graph, spec) = common::connected_instance(t.wrapping_mul(7919).wrapping_add(3), 10, 3);
        let d = graph.max_degree();
        let sol = growth_mhv(&graph, &spec);
        let opt = brute_force_mhv(&graph, &spec, HappinessMode::Strict, ORACLE_BUDGET).unwrap();
        let (s, o) = (vertices(&sol) as u128, vertices(&opt) as u128);
        let factor = (d * (d - 1) * (d + 1)) as u128;
        assert!(
            s * factor >= o,
            "growth below OPT/(d(d-1)(d+1)) on\n{}",
            write_instance(&graph, &spec, HappinessMode::Strict)
        );
        if o > 0 && s * worst_den < worst_num * o {
            worst_num = s;
            worst_den = o;
        }
    }
    println!(
        "criterion 03 growth-ratio: PASS (500 instances, worst SOL/OPT = {worst_num}/{worst_den})"
    );
}

/// Criterion 4: growth run ledgers on the criterion-3 instance set. After
/// growth run: `lu_new <= d(d-2) h_new`, per-step caps `d(d-2)` (P-step),
/// `(d-1)(d-2)` (Lh-step) and 0 (Lu-step), `h_new >= (l_org - lu_org) /
/// (d(d-1))`, and `OPT <= h_org + (d+1)(l_org - lu_org)`; skipped as
/// vacuous when the degree bound is below 2.
///
/// The aggregate and per-step caps are not worst-case truths: a P-step can
/// flip a second P-vertex to U and re-type that vertex's uncolored
/// neighbors to Lu (see `p_step_orphaning_exceeds_nominal_lu_cap` in the
/// state audit suite for a deterministic 6-path where the cap is
/// exceeded). On this random instance family the caps hold; violations
/// require an adversarial precoloring pattern this sampler essentially
/// never draws.
#[test]
fn criterion_04_growth_ledgers() {
    let mut vacuous = 0;
    for t in 0..500u64 {
        let (graph, spec) = common::connected_instance(t.wrapping_mul(7919).wrapping_add(3), 10, 3);
        let d = graph.max_degree();
        let sol = growth_mhv(&graph, &spec);
        let c = sol.counters.growth().unwrap();
        let opt = brute_force_mhv(&graph, &spec, HappinessMode::Strict, ORACLE_BUDGET).unwrap();
        // The optimum upper bound has no degree-2 caveat.
        assert!(
            vertices(&opt) <= c.h_org + (d + 1) * (c.l_org - c.lu_org),
            "OPT bound violated on\n{}",
            write_instance(&graph, &spec, HappinessMode::Strict)
        );
        if d < 2 {
            vacuous += 1;
            continue;
        }
        let instance = || write_instance(&graph, &spec, HappinessMode::Strict);
        assert!(
            c.lu_new <= d * (d - 2) * c.h_new,
            "aggregate lu_new cap violated on\n{}",
            instance()
        );
        assert!(
            c.max_lu_per_p_step <= d * (d - 2),
            "P-step cap violated on\n{}",
            instance()
        );
        assert!(
            c.max_lu_per_lh_step <= (d - 1) * (d - 2),
            "Lh-step cap violated on\n{}",
            instance()
        );
        assert_eq!(c.max_lu_per_lu_step, 0, "Lu-step generated doomed vertices");
        assert!(
            c.h_new * d * (d - 1) >= c.l_org - c.lu_org,
            "h_new lower bound violated on\n{}",
            instance()
        );
    }
    println!(
        "criterion 04 growth-ledgers: PASS (500 runs, {vacuous} vacuous-skipped; see state_audit for the adversarial cap exception)"
    );
}

/// Criterion 5: division is never below half of `W_org + W' + W''` and
/// never below half the optimum on oracle-checkable weighted instances.
#[test]
fn criterion_05_division_ratio() {
    let two = Rational64::from_integer(2);
    let mut oracle_checked = 0;
    for t in 0..500u64 {
        let k = [2, 3, 4][(t % 3) as usize];
        let (graph, spec) = common::weighted_instance(t.wrapping_mul(131).wrapping_add(17), 10, k);
        let sol = division_mhe(&graph, &spec);
        let value = sol.objective.as_weight();
        let bound = sol.counters.division().unwrap().bound();
        assert!(
            value * two >= bound,
            "division below half its bound on\n{}",
            write_instance(&graph, &spec, HappinessMode::Strict)
        );
        match brute_force_mhe(&graph, &spec, 1 << 20) {
            Ok(opt) => {
                oracle_checked += 1;
                assert!(
                    value * two >= opt.objective.as_weight(),
                    "division below OPT/2 on\n{}",
                    write_instance(&graph, &spec, HappinessMode::Strict)
                );
            }
            Err(SolverError::BudgetExceeded { .. }) => {}
            Err(e) => panic!("oracle failed: {e}"),
        }
    }
    println!(
        "criterion 05 division-ratio: PASS (500 instances, {oracle_checked} oracle-checked)"
    );
}

/// Criterion 6: reduction identities, zero tolerance, >= 100 instances per
/// reduction sampled from each constructor's declared input population.
///
/// Two of the five identities are false on degenerate subpopulations that
/// the declared preconditions admit:
///
/// * MHE -> MHV: when the precoloring uses a single distinct color c, the
///   apex vertex of color c becomes happy in the coloring that paints
///   everything c, so OPT_MHV = OPT_MHE + 1.
/// * MHE -> SoftMHV: when the source has no edges there are no w-gadgets,
///   and every isolated vertex is soft-happy once colored, so
///   n* = n instead of the claimed 0.
///
/// The test reports both populations and fails if any sampled instance
/// violates its identity, which reliably happens; the other three
/// reductions hold everywhere.
#[test]
fn criterion_06_reduction_identities() {
    let budget: u64 = 1 << 22;
    let mut failures: Vec<String> = Vec::new();

    // Multiway cut -> 3-MHE.
    let mut held = 0;
    let mut t = 0u64;
    while held < 100 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x111);
        let n = rng.random_range(3..=6);
        let (graph, _) = gen_random(n, rng.random_range(0.2..0.8), 2, 0.0, t ^ 0x222);
        let mc = MultiwayCutInstance::new(graph, vec![1, 2, 3]).unwrap();
        let out = multiway_cut_to_3mhe(&mc).unwrap();
        match verify_reduction(&out, budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated {
                source_opt,
                target_opt,
                expected,
            } => failures.push(format!(
                "mwc->3mhe: c*={source_opt} m*={target_opt} expected {expected}"
            )),
            Verdict::Skipped { .. } => {}
        }
    }
    println!("  mwc->3mhe: {held} hold, {} violations", failures.len());

    // 3-MHE -> k-MHE padding.
    let mut held = 0;
    let mut violations = 0;
    let mut t = 0u64;
    while held < 100 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x333);
        let n = rng.random_range(2..=6);
        let (graph, spec) = gen_random(n, 0.5, 3, rng.random_range(0.3..1.0), t ^ 0x444);
        if spec.class(1).is_empty() {
            continue;
        }
        let k = 3 + (t % 4) as usize;
        let out = pad_3mhe_to_kmhe(&graph, &spec, k).unwrap();
        match verify_reduction(&out, budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => violations += 1,
            Verdict::Skipped { .. } => {}
        }
    }
    if violations > 0 {
        failures.push(format!("pad->kmhe: {violations} violations"));
    }
    println!("  pad->kmhe: {held} hold, {violations} violations");

    // k-MHE -> k-MHV.
    let mut held = 0;
    let mut mono_viol = 0;
    let mut multi_viol = 0;
    let mut sampled = 0;
    let mut t = 0u64;
    while sampled < 150 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x555);
        let n = rng.random_range(2..=6);
        let (graph, spec) = gen_random(n, 0.5, 3, rng.random_range(0.2..1.0), t ^ 0x666);
        if spec.precolored_count() == 0 {
            continue;
        }
        sampled += 1;
        let out = mhe_to_mhv(&graph, &spec).unwrap();
        match verify_reduction(&out, budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => {
                if spec.used_colors().len() >= 2 {
                    multi_viol += 1;
                } else {
                    mono_viol += 1;
                }
            }
            Verdict::Skipped { .. } => {}
        }
    }
    println!(
        "  mhe->mhv: {held} hold; violations: {mono_viol} on single-color precolorings, {multi_viol} on multi-color"
    );
    if mono_viol + multi_viol > 0 {
        failures.push(format!(
            "mhe->mhv: {mono_viol} violations on single-color sources (apex of the lone color can be happy: OPT_MHV = OPT_MHE + 1), {multi_viol} elsewhere"
        ));
    }

    // k-MHE -> HardMHV.
    let mut held = 0;
    let mut violations = 0;
    let mut t = 0u64;
    while held < 100 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x777);
        let n = rng.random_range(2..=6);
        let (graph, spec) = gen_random(n, 0.6, 3, rng.random_range(0.2..1.0), t ^ 0x888);
        if graph.max_degree() == 0 {
            continue;
        }
        let out = mhe_to_hardmhv(&graph, &spec).unwrap();
        match verify_reduction(&out, budget) {
            Verdict::Holds { .. } => held += 1,
            Verdict::Violated { .. } => violations += 1,
            Verdict::Skipped { .. } => {}
        }
    }
    if violations > 0 {
        failures.push(format!("mhe->hardmhv: {violations} violations"));
    }
    println!("  mhe->hardmhv: {held} hold, {violations} violations");

    // 3-MHE -> SoftMHV. Small sources keep the gadget enumerable.
    let mut held = 0;
    let mut edgeless_viol = 0;
    let mut other_viol = 0;
    let mut sampled = 0;
    let mut t = 0u64;
    while sampled < 110 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x999);
        let n = rng.random_range(1..=3);
        let (graph, spec) = gen_random(n, 0.6, 3, rng.random_range(0.3..1.0), t ^ 0xaaa);
        let rho = [
            Rational64::new(1, 2),
            Rational64::new(2, 3),
            Rational64::new(1, 3),
        ][(t % 3) as usize];
        let out = mhe_to_softmhv(&graph, &spec, rho).unwrap();
        match verify_reduction(&out, budget) {
            Verdict::Holds { .. } => {
                held += 1;
                sampled += 1;
            }
            Verdict::Violated { .. } => {
                if graph.m() == 0 {
                    edgeless_viol += 1;
                } else {
                    other_viol += 1;
                }
                sampled += 1;
            }
            Verdict::Skipped { .. } => {}
        }
    }
    println!(
        "  mhe->softmhv: {held} hold; violations: {edgeless_viol} on edgeless sources, {other_viol} elsewhere"
    );
    if edgeless_viol + other_viol > 0 {
        failures.push(format!(
            "mhe->softmhv: {edgeless_viol} violations on edgeless sources (isolated vertices are soft-happy, n* = n not 0), {other_viol} elsewhere"
        ));
    }

    if failures.is_empty() {
        println!("criterion 06 reduction-identities: PASS");
    } else {
        println!("criterion 06 reduction-identities: FAIL");
        for f in &failures {
            println!("    {f}");
        }
        panic!(
            "criterion 06: {} of 5 identities violated on their declared input populations: {:?}",
            failures.len(),
            failures
        );
    }
}

/// Criterion 7: gadget parameters satisfy the defining inequalities for 50
/// thresholds, in exact rational arithmetic.
#[test]
fn criterion_07_soft_params() {
    let mut checked = 0;
    'outer: for den in 2i64..=12 {
        for num in 1..den {
            let rho = Rational64::new(num, den);
            let (k, h) = soft_params(rho).unwrap();
            let k_r = Rational64::from_integer(k as i64);
            let h_r = Rational64::from_integer(h as i64);
            let deg = h_r + k_r + Rational64::from_integer(2);
            assert!(h_r + Rational64::from_integer(3) >= rho * deg, "inequality (1) at {rho}");
            assert!(h_r + Rational64::from_integer(2) < rho * deg, "inequality (2) at {rho}");
            assert!(k_r >= Rational64::from_integer(4) / rho - Rational64::from_integer(3));
            assert!(k_r >= Rational64::from_integer(2) / rho);
            assert!(k >= 3);
            checked += 1;
            if checked >= 50 {
                break 'outer;
            }
        }
    }
    println!("criterion 07 soft-params: PASS ({checked} thresholds)");
}

/// Criterion 8: 10,000 incremental coloring steps agree with full
/// reclassification at every step.
#[test]
fn criterion_08_incremental_classifier_audit() {
    let mut steps = 0usize;
    let mut t = 0u64;
    while steps < 10_000 {
        t += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0xd1ce);
        let k = rng.random_range(2..=4);
        let (graph, spec) = common::random_instance(t.wrapping_mul(37), 14, k);
        let mode = match t % 3 {
            0 => HappinessMode::Strict,
            1 => HappinessMode::Soft(Rational64::new(rng.random_range(1..4), 4)),
            _ => HappinessMode::Hard(rng.random_range(1..=3)),
        };
        let mut state = ColoringState::new(&graph, &spec, mode);
        let mut free: Vec<VertexId> = (1..=graph.n())
            .filter(|&v| spec.color_of(v).is_none())
            .collect();
        while !free.is_empty() {
            let idx = rng.random_range(0..free.len());
            let v = free.swap_remove(idx);
            state.apply_color(v, rng.random_range(1..=k)).unwrap();
            steps += 1;
            let colors: Vec<Option<Color>> =
                (0..=graph.n()).map(|u| state.color_of(u)).collect();
            let scratch = classify_all_from_scratch(&graph, k, &colors, mode);
            for u in 1..=graph.n() {
                assert_eq!(
                    state.vertex_type(u),
                    scratch[u],
                    "audit mismatch at step {steps} on\n{}",
                    write_instance(&graph, &spec, mode)
                );
            }
        }
    }
    println!("criterion 08 incremental-audit: PASS ({steps} steps audited)");
}

/// Criterion 9: the polynomial-time solvers at practical scale. The exact
/// two-color MHE solver and the growth algorithm each finish a
/// 100k-vertex / 500k-edge instance within 10 seconds and under 2 GB.
#[test]
fn criterion_09_scalability_smoke() {
    let n = 100_000;
    let m = 500_000;
    let graph = common::gnm_graph(n, m, 0xbead);
    assert_eq!(graph.m(), m);

    let spec2 = common::random_precolor(n, 2, 0.1, 0xfeed);
    let t0 = Instant::now();
    let sol = exact_2mhe(&graph, &spec2).unwrap();
    let t_exact = t0.elapsed();
    assert!(
        t_exact.as_secs_f64() < 10.0,
        "exact_2mhe took {t_exact:?}"
    );
    // Sanity: the solver cannot beat the total weight.
    assert!(sol.objective.as_weight() <= graph.total_weight());

    let spec10 = common::random_precolor(n, 10, 0.1, 0xf00d);
    let t1 = Instant::now();
    let sol = growth_mhv(&graph, &spec10);
    let t_growth = t1.elapsed();
    assert!(
        t_growth.as_secs_f64() < 10.0,
        "growth_mhv took {t_growth:?}"
    );
    assert!(vertices(&sol) <= n);

    let peak_kb = peak_memory_kb();
    assert!(
        peak_kb < 2_000_000,
        "peak memory {peak_kb} kB exceeds 2 GB"
    );
    println!(
        "criterion 09 scalability: PASS (exact_2mhe {t_exact:?}, growth {t_growth:?}, peak {peak_kb} kB)"
    );
}

fn peak_memory_kb() -> u64 {
    let status = std::fs::read_to_string("/proc/self/status").unwrap_or_default();
    for key in ["VmHWM:", "VmRSS:"] {
        if let Some(line) = status.lines().find(|l| l.starts_with(key)) {
            if let Some(kb) = line.split_whitespace().nth(1).and_then(|s| s.parse().ok()) {
                return kb;
            }
        }
    }
    0
}

/// Criterion 10: 1000 generated instances survive write -> parse -> write
/// byte-identically.
#[test]
fn criterion_10_format_round_trip() {
    for t in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(t ^ 0x10);
        let n = rng.random_range(1..=20);
        let k = rng.random_range(1..=5);
        let (graph, spec) = gen_random(n, rng.random_range(0.0..0.6), k, rng.random_range(0.0..1.0), t);
        let mode = match t % 3 {
            0 => HappinessMode::Strict,
            1 => HappinessMode::Soft(Rational64::new(1 + (t as i64 % 3), 4)),
            _ => HappinessMode::Hard(1 + (t as usize % 4)),
        };
        let text = write_instance(&graph, &spec, mode);
        let (g2, s2, m2) = parse_instance(&text).unwrap_or_else(|e| {
            panic!("canonical text failed to parse at seed {t}: {e}\n{text}")
        });
        let second = write_instance(&g2, &s2, m2);
        assert_eq!(text, second, "round trip not byte-stable at seed {t}");
    }
    println!("criterion 10 round-trip: PASS (1000 instances byte-stable)");
}
