//! Exhaustive certification at tiny scale: every graph on up to 4
//! vertices, under every precoloring, for every solver family. Random
//! suites elsewhere cover larger sizes; this one leaves no gaps at all in
//! the smallest population, where most classification corner cases
//! (isolated vertices, empty classes, disconnected pieces) live.

use happy_core::*;
use num::rational::Rational64;

/// All graphs on exactly `n` labeled vertices.
fn graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)))
        .collect();
    (0..(1u32 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

/// All precolorings of `n` vertices over colors `1..=k` (0 = uncolored).
fn precolorings(n: usize, k: usize) -> Vec<ColorSpec> {
    let total = (k as u32 + 1).pow(n as u32);
    (0..total)
        .map(|mut mask| {
            let mut pre = Vec::new();
            for v in 1..=n {
                let digit = (mask % (k as u32 + 1)) as usize;
                mask /= k as u32 + 1;
                if digit > 0 {
                    pre.push((v, digit));
                }
            }
            ColorSpec::new(k, n, &pre).unwrap()
        })
        .collect()
}

#[test]
fn exact_two_color_solvers_are_exact_everywhere() {
    for n in 1..=4 {
        for graph in graphs(n) {
            for spec in precolorings(n, 2) {
                let bv = brute_force_mhv(&graph, &spec, HappinessMode::Strict, 1 << 10).unwrap();
                let ev = exact_2mhv(&graph, &spec).unwrap();
                assert_eq!(ev.objective, bv.objective);
                let be = brute_force_mhe(&graph, &spec, 1 << 10).unwrap();
                let ee = exact_2mhe(&graph, &spec).unwrap();
                assert_eq!(ee.objective, be.objective);
            }
        }
    }
}

#[test]
fn greedy_growth_and_division_bounds_hold_everywhere() {
    let k = 3;
    let slack = |d: usize| if d >= 2 { d * (d - 1) * (d + 1) } else { 1 };
    for n in 1..=4 {
        for graph in graphs(n) {
            let d = graph.max_degree();
            for spec in precolorings(n, k) {
                let opt = brute_force_mhv(&graph, &spec, HappinessMode::Strict, 1 << 10)
                    .unwrap()
                    .objective
                    .vertices()
                    .unwrap();
                let greedy = greedy_mhv(&graph, &spec, HappinessMode::Strict)
                    .objective
                    .vertices()
                    .unwrap();
                assert!(greedy * k >= opt);

                let sol = growth_mhv(&graph, &spec);
                let c = sol.counters.growth().unwrap();
                let growth = sol.objective.vertices().unwrap();
                // Growth is itself a valid solution and respects the
                // optimum upper bound ledger.
                assert!(growth <= opt);
                assert!(opt <= c.h_org + (d + 1) * (c.l_org - c.lu_org));
                if d >= 2 {
                    assert!(growth * slack(d) >= opt);
                }

                let div = division_mhe(&graph, &spec);
                let bound = div.counters.division().unwrap().bound();
                let two = Rational64::from_integer(2);
                assert!(div.objective.as_weight() * two >= bound);
                let opt_e = brute_force_mhe(&graph, &spec, 1 << 10).unwrap();
                assert!(div.objective.as_weight() * two >= opt_e.objective.as_weight());
                assert!(opt_e.objective.as_weight() <= bound);
            }
        }
    }
}

#[test]
fn variant_growth_never_exceeds_its_oracle() {
    let rho = Rational64::new(1, 2);
    for n in 1..=4 {
        for graph in graphs(n) {
            for spec in precolorings(n, 3) {
                let soft_opt = brute_force_mhv(&graph, &spec, HappinessMode::Soft(rho), 1 << 10)
                    .unwrap()
                    .objective;
                let soft = growth_soft_mhv(&graph, &spec, rho).unwrap().objective;
                assert!(soft <= soft_opt);
                let greedy = greedy_variant(&graph, &spec, HappinessMode::Soft(rho))
                    .unwrap()
                    .objective
                    .vertices()
                    .unwrap();
                assert!(greedy * 3 >= soft_opt.vertices().unwrap());
                if graph.max_degree() >= 1 {
                    let hard_opt =
                        brute_force_mhv(&graph, &spec, HappinessMode::Hard(1), 1 << 10)
                            .unwrap()
                            .objective;
                    let hard = growth_hard_mhv(&graph, &spec, 1).unwrap().objective;
                    assert!(hard <= hard_opt);
                }
            }
        }
    }
}
