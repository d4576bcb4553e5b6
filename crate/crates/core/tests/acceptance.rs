//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use sssp_frontier::empirical::{
    dijkstra, generate_graph, job_seed, oracle_shortest_paths, run_scaling_experiment, WeightRange,
};
use sssp_frontier::format::round_sig;
use sssp_frontier::frontier::Classification;
use sssp_frontier::report::{
    parse_sweep_csv, reproduce_tables, sweep_csv, Metadata, ReportBundle, Tables,
};
use sssp_frontier::scenario::{builtin_scenario, GridMode};
use sssp_frontier::{
    classify_rows, eval_dijkstra, eval_duan, eval_grover, eval_wesolowski, find_crossover,
    grover_barrier_check, run_sweep, GraphParams, MarginalBand, ModelRegistry, NGrid, ScalingLaw,
    Scenario, SweepResult,
};

/// Reference sparse cost table: scenario, decade, costs in registry order, winner.
const COST_TABLE: [(&str, i32, [f64; 4], &str); 6] = [
    (
        "sparse-short",
        4,
        [2.16e5, 5.21e5, 9.01e6, 5.31e4],
        "wesolowski",
    ),
    (
        "sparse-short",
        6,
        [2.78e7, 6.83e7, 9.01e9, 1.20e6],
        "wesolowski",
    ),
    (
        "sparse-short",
        8,
        [3.40e9, 8.28e9, 9.01e12, 2.14e7],
        "wesolowski",
    ),
    (
        "sparse-long",
        4,
        [2.16e5, 5.21e5, 9.01e6, 2.85e5],
        "dijkstra",
    ),
    (
        "sparse-long",
        6,
        [2.78e7, 6.83e7, 9.01e9, 2.85e8],
        "dijkstra",
    ),
    (
        "sparse-long",
        8,
        [3.40e9, 8.28e9, 9.01e12, 2.85e11],
        "dijkstra",
    ),
];

/// Reference ratio table: scenario, decade, A, B, ratio, printed decimals, label.
const RATIO_TABLE: [(&str, i32, f64, f64, f64, i32, Classification); 7] = [
    (
        "sparse-short",
        4,
        2.16e5,
        5.31e4,
        4.1,
        1,
        Classification::Quantum,
    ),
    (
        "sparse-short",
        6,
        2.78e7,
        1.20e6,
        23.2,
        1,
        Classification::Quantum,
    ),
    (
        "sparse-short",
        8,
        3.40e9,
        2.14e7,
        158.9,
        1,
        Classification::Quantum,
    ),
    (
        "sparse-long",
        4,
        2.16e5,
        2.85e5,
        0.76,
        2,
        Classification::Classical,
    ),
    (
        "sparse-long",
        6,
        2.78e7,
        2.85e8,
        0.10,
        2,
        Classification::Classical,
    ),
    (
        "dense-short",
        4,
        1.08e6,
        1.72e5,
        6.3,
        1,
        Classification::Quantum,
    ),
    (
        "dense-long",
        4,
        1.08e6,
        9.55e5,
        1.13,
        2,
        Classification::Marginal,
    ),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn same_3sf(ours: f64, reference: f64) -> bool {
    round_sig(ours, 3) == reference
}

fn round_dp(x: f64, dp: i32) -> f64 {
    let k = 10f64.powi(dp);
    (x * k).round() / k
}

fn timed_tables(mode: GridMode) -> Result<(Tables, Duration), String> {
    let start = Instant::now();
    let t = reproduce_tables(mode, &MarginalBand::default()).map_err(|e| e.to_string())?;
    Ok((t, start.elapsed()))
}

fn cost_table() -> Outcome {
    let (cal, t_cal) = timed_tables(GridMode::Calibrated)?;
    let (exact, t_exact) = timed_tables(GridMode::Exact)?;
    let mut problems = Vec::new();
    let mut worst_vs_ours = 0f64;
    let mut worst_vs_reference = 0f64;
    let mut winners = 0;
    for (i, (name, decade, reference, winner)) in COST_TABLE.iter().enumerate() {
        let (c, e) = (&cal.costs.rows[i], &exact.costs.rows[i]);
        if c.scenario != *name || e.n != 10u64.pow(*decade as u32) {
            problems.push(format!("row {i} layout"));
        }
        for (k, &p) in reference.iter().enumerate() {
            if !same_3sf(c.costs[k], p) {
                problems.push(format!("{name} 1e{decade} col {k}: {} vs {p}", c.costs[k]));
            }
            worst_vs_ours = worst_vs_ours.max((p - e.costs[k]).abs() / e.costs[k]);
            worst_vs_reference = worst_vs_reference.max((p - e.costs[k]).abs() / p);
        }
        if c.winner == *winner && e.winner == *winner {
            winners += 1;
        }
    }
    let elapsed = t_cal + t_exact;
    let detail = format!(
        "24/24 cells at 3 sf: {}; exact-decade max deviation {:.2}% of computed ({:.2}% of reference); \
         winners {winners}/6 in both modes; {elapsed:.1?}",
        problems.is_empty(),
        100.0 * worst_vs_ours,
        100.0 * worst_vs_reference,
    );
    check(
        problems.is_empty()
            && worst_vs_ours <= 0.10
            && winners == 6
            && elapsed < Duration::from_secs(1),
        if problems.is_empty() {
            detail
        } else {
            format!("{detail}; {}", problems.join("; "))
        },
    )
}

fn ratio_table() -> Outcome {
    let (cal, t_cal) = timed_tables(GridMode::Calibrated)?;
    let (exact, t_exact) = timed_tables(GridMode::Exact)?;
    let mut problems = Vec::new();
    let mut worst = 0f64;
    let mut labels = 0;
    for (i, &(name, decade, a, b, ratio, dp, label)) in RATIO_TABLE.iter().enumerate() {
        let (c, e) = (&cal.ratios.rows[i], &exact.ratios.rows[i]);
        if c.scenario != name || e.n != 10u64.pow(decade as u32) || c.best_classical != "dijkstra" {
            problems.push(format!("row {i} layout"));
        }
        if !same_3sf(c.best_classical_cost, a) || !same_3sf(c.quantum_cost, b) {
            problems.push(format!("{name} 1e{decade}: A/B cells"));
        }
        if round_dp(c.displayed_ratio, dp) != ratio {
            problems.push(format!(
                "{name} 1e{decade}: displayed {} vs {ratio}",
                c.displayed_ratio
            ));
        }
        worst = worst.max((e.ratio - ratio).abs() / ratio);
        if c.classification == label && e.classification == label {
            labels += 1;
        }
    }
    let elapsed = t_cal + t_exact;
    let detail = format!(
        "calibrated cells and printed ratios match: {}; exact-decade max deviation {:.2}%; \
         classifications {labels}/7; {elapsed:.1?}",
        problems.is_empty(),
        100.0 * worst
    );
    check(
        problems.is_empty() && worst <= 0.15 && labels == 7 && elapsed < Duration::from_secs(1),
        if problems.is_empty() {
            detail
        } else {
            format!("{detail}; {}", problems.join("; "))
        },
    )
}

fn large_n_ratio() -> Outcome {
    let (cal, _) = timed_tables(GridMode::Calibrated)?;
    let (exact, _) = timed_tables(GridMode::Exact)?;
    let (c, e) = (cal.ratios.rows[2].ratio, exact.ratios.rows[2].ratio);
    check(
        c > 150.0 && e > 140.0,
        format!("sparse-short 1e8 ratio {c:.2} calibrated, {e:.2} exact"),
    )
}

fn cost_gap(sc: &Scenario, reg: &ModelRegistry, a: &str, b: &str, n: f64) -> f64 {
    let p = sc.params_at(n).unwrap();
    reg.get(a).unwrap().evaluate(&p).unwrap() - reg.get(b).unwrap().evaluate(&p).unwrap()
}

fn crossover() -> Outcome {
    let reg = ModelRegistry::default();
    let long = builtin_scenario("sparse-long").unwrap();
    let short = builtin_scenario("sparse-short").unwrap();
    let found = find_crossover(&long, &reg, "dijkstra", "wesolowski", 1e2, 1e8)
        .map_err(|e| e.to_string())?;
    let none = find_crossover(&short, &reg, "dijkstra", "wesolowski", 1e2, 1e8)
        .map_err(|e| e.to_string())?;
    let Some(c) = found.crossing else {
        return Err("no sparse-long crossing".into());
    };

    const POINTS: usize = 10_000;
    let (x0, x1) = (2f64, 8f64);
    let ns: Vec<f64> = (0..POINTS)
        .map(|i| 10f64.powf(x0 + (x1 - x0) * i as f64 / (POINTS - 1) as f64))
        .collect();
    let sign = |n: f64| cost_gap(&long, &reg, "dijkstra", "wesolowski", n).signum();
    let flips: Vec<usize> = (0..POINTS - 1)
        .filter(|&i| sign(ns[i]) != sign(ns[i + 1]))
        .collect();
    let step = ns[1] / ns[0];
    let agrees =
        flips.len() == 1 && c.n_star >= ns[flips[0]] / step && c.n_star <= ns[flips[0] + 1] * step;
    let short_flips = ns
        .windows(2)
        .filter(|w| {
            let s = |n| cost_gap(&short, &reg, "dijkstra", "wesolowski", n).signum();
            s(w[0]) != s(w[1])
        })
        .count();
    check(
        (4.5e3..=5.5e3).contains(&c.n_star)
            && none.crossing.is_none()
            && short_flips == 0
            && agrees,
        format!(
            "sparse-long n* = {:.2}; brute bracket {:?}; sparse-short crossing: {}",
            c.n_star,
            flips.first().map(|&i| (ns[i].round(), ns[i + 1].round())),
            none.crossing.is_some()
        ),
    )
}

fn grover_barrier() -> Outcome {
    let reg = ModelRegistry::default();
    let grid: NGrid = "1e4,1e8,25"
        .parse()
        .map_err(|e: sssp_frontier::Error| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["sparse-short", "sparse-long"] {
        let s = grover_barrier_check(&builtin_scenario(name).unwrap(), &grid, &reg)
            .map_err(|e| e.to_string())?;
        let increasing = s.points.windows(2).all(|w| w[1].1 > w[0].1);
        ok &= s.strictly_increasing && increasing && s.points.len() == 101;
        let (first, last) = (s.points[0].1, s.points[s.points.len() - 1].1);
        parts.push(format!(
            "{name}: {first:.1} -> {last:.1} over {} points",
            s.points.len()
        ));
    }
    check(ok, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    const GRAPHS: u64 = 1000;
    let start = Instant::now();
    let mut failures = 0;
    let mut bound_violations = 0;
    for job in 0..GRAPHS {
        let s = job_seed(42, job);
        let n = 2 + (s % 199) as u32;
        let c = (0.5 + ((s >> 20) % 100) as f64 / 10.0).min(f64::from(n - 1));
        let law = ScalingLaw::power(c, 1.0).unwrap();
        let g = generate_graph(n, &law, WeightRange::Integer { lo: 1, hi: 100 }, s)
            .map_err(|e| e.to_string())?;
        let source = (s >> 40) as u32 % n;
        let run = dijkstra(&g, source).map_err(|e| e.to_string())?;
        if run.dist != oracle_shortest_paths(&g, source).map_err(|e| e.to_string())? {
            failures += 1;
        }
        if run.stats.settled > u64::from(n) || run.stats.edge_relaxations > g.m() as u64 {
            bound_violations += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        failures == 0 && bound_violations == 0 && elapsed < Duration::from_secs(60),
        format!("{GRAPHS} graphs, {failures} mismatches, {bound_violations} counter-bound violations, {elapsed:.1?}"),
    )
}

fn empirical_scaling() -> Outcome {
    let ns: Vec<u32> = (8..=14).map(|k| 1 << k).collect();
    let law = ScalingLaw::power(10.0, 1.0).unwrap();
    let exp = run_scaling_experiment(&ns, &law, WeightRange::default(), 2024, 3)
        .map_err(|e| e.to_string())?;
    let (slope, r2) = (
        exp.fit.slope.unwrap_or(f64::NAN),
        exp.fit.r_squared.unwrap_or(f64::NAN),
    );
    check(
        (0.9..=1.1).contains(&slope) && r2 >= 0.98,
        format!("slope {slope:.4}, R^2 {r2:.6}, {} runs", exp.runs.len()),
    )
}

fn record(name: &str, result: Result<(), String>, log: &mut Vec<String>) -> bool {
    match result {
        Ok(()) => true,
        Err(e) => {
            log.push(format!("{name}: {e}"));
            false
        }
    }
}

fn property_suites() -> Outcome {
    const CASES: u32 = 1000;
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let mut failed = Vec::new();
    let mut ok = true;
    let exp = |lo: f64, hi: f64| (lo..hi).prop_map(|e: f64| 10f64.powf(e));

    let r = runner
        .run(
            &(exp(0.31, 9.0), 0.0f64..1.0, exp(0.0, 9.0), 1.001f64..10.0),
            |(n, frac, l, k)| {
                let m = (n * (n - 1.0)).powf(frac);
                let p = |n, m| GraphParams::full(n, m, l).unwrap();
                let (base, more_m, more_n) = (p(n, m), p(n, m * k), p(n * k, m));
                for f in [eval_dijkstra, eval_duan, eval_grover] {
                    prop_assert!(f(&more_m) > f(&base) && f(&more_n) > f(&base));
                }
                let w = |l: f64| eval_wesolowski(&GraphParams::full(n, m, l).unwrap()).unwrap();
                prop_assert!(eval_wesolowski(&more_m).unwrap() > eval_wesolowski(&base).unwrap());
                prop_assert!(w(l * k) > w(l));
                Ok(())
            },
        )
        .map_err(|e| e.to_string());
    ok &= record("monotonicity", r, &mut failed);

    let r = runner
        .run(
            &(exp(0.31, 9.0), exp(0.0, 18.0), exp(0.0, 9.0), 1e-3f64..1e3),
            |(n, m, l, k)| {
                let p = |m, l| GraphParams::full(n, m, l).unwrap();
                let g = eval_grover(&p(m, l));
                prop_assert!((eval_grover(&p(k * m, l)) - k * g).abs() <= 1e-14 * k * g);
                let w = eval_wesolowski(&p(m, l)).unwrap();
                prop_assert!(
                    (eval_wesolowski(&p(m, k * l)).unwrap() - k * w).abs() <= 1e-14 * k * w
                );
                prop_assert!(
                    (eval_wesolowski(&p(k * k * m, l)).unwrap() - k * w).abs() <= 1e-14 * k * w
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string());
    ok &= record("homogeneity", r, &mut failed);

    let names = ["sparse-short", "sparse-long", "dense-short", "dense-long"];
    let reg = ModelRegistry::default();
    let band = MarginalBand::default();
    let grid_strategy = (2u64..10_000, 1u32..4, 1u32..12)
        .prop_map(|(lo, d, ppd)| NGrid::log_spaced(lo, lo * 10u64.pow(d), ppd).unwrap());
    let sweep_of =
        |i: usize, g: &NGrid| run_sweep(&builtin_scenario(names[i]).unwrap(), g, &reg).unwrap();

    let r = runner
        .run(
            &(
                0usize..4,
                grid_strategy.clone(),
                prop_oneof![1e-6f64..1e-1, 1e1f64..1e6],
            ),
            |(i, g, k)| {
                let sweep = sweep_of(i, &g);
                let mut scaled: SweepResult = sweep.clone();
                for row in &mut scaled.rows {
                    row.costs.iter_mut().for_each(|c| *c *= k);
                }
                let (a, b) = (
                    classify_rows(&sweep, &band).unwrap(),
                    classify_rows(&scaled, &band).unwrap(),
                );
                for (x, y) in a.iter().zip(&b) {
                    prop_assert!(x.winner == y.winner && x.classification == y.classification);
                    prop_assert!((x.ratio - y.ratio).abs() <= 1e-12 * x.ratio);
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string());
    ok &= record("argmin invariance", r, &mut failed);

    let r = runner
        .run(&(0usize..4, grid_strategy.clone()), |(i, g)| {
            let (a, b) = (sweep_of(i, &g), sweep_of(i, &g));
            prop_assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
            Ok(())
        })
        .map_err(|e| e.to_string());
    ok &= record("sweep determinism", r, &mut failed);

    let r = runner
        .run(&(0usize..4, grid_strategy), |(i, g)| {
            let sweep = sweep_of(i, &g);
            let table = parse_sweep_csv(&sweep_csv(&sweep))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            for ((n, costs), row) in table.rows.iter().zip(&sweep.rows) {
                prop_assert!(*n == row.n && *costs == row.costs);
            }
            let mut bundle = ReportBundle::new(Metadata::new("round-trip"));
            bundle.sweeps.push(sweep);
            let back = ReportBundle::from_json(&bundle.to_json().unwrap()).unwrap();
            prop_assert_eq!(back, bundle);
            Ok(())
        })
        .map_err(|e| e.to_string());
    ok &= record("CSV/JSON round trip", r, &mut failed);

    let detail = format!("5 suites x {CASES} cases");
    check(
        ok,
        if failed.is_empty() {
            detail
        } else {
            format!("{detail}; {}", failed.join("; "))
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("cost table reproduction", cost_table),
        ("ratio table reproduction", ratio_table),
        ("large-n advantage ratio", large_n_ratio),
        ("dijkstra/wesolowski crossover", crossover),
        ("grover barrier divergence", grover_barrier),
        ("dijkstra matches bellman-ford oracle", oracle_equivalence),
        ("empirical work scaling", empirical_scaling),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
