//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sasbt::dt::{nsga2_dt, DtConfig, TreeParams};
use sasbt::falsify::{
    falsify_with, fit_arx, simulate_arx, AnnealingConfig, ArxConfig, ArxModel, Benchmark, FalsifyConfig,
    FalsifyError, Minimum, Requirement, SignalMode, SignalParam, Sut, SurrogateOptimizer, TimeSeries,
};
use sasbt::harness::{run_compare, run_falsify, ExperimentConfig, FalsifyReport, RANDOM, SURROGATE};
use sasbt::indicators::{generational_distance, hypervolume, non_dominated_filter, spread};
use sasbt::search::{SearchConfig, SearchSpace};
use sasbt::sim::AvpEvaluator;

struct Outcome {
    pass: bool,
    detail: String,
}

fn config(name: &str, out: &Path) -> ExperimentConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name);
    let mut cfg = ExperimentConfig::load(&path).expect("bundled config loads");
    cfg.out = out.to_path_buf();
    cfg
}

fn median_usize(mut v: Vec<usize>) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] as f64 + v[n / 2] as f64) / 2.0
    }
}

// ---------------------------------------------------------------- 1 and 2

fn compare_criteria() -> (Outcome, Outcome) {
    let dir = tempfile::tempdir().unwrap();
    let report = run_compare(&config("compare_avp.toml", dir.path())).expect("comparison runs");
    let agg = &report.aggregates;
    let ratio = agg.distinct_ratio.unwrap_or(f64::NAN);
    let p = agg.rank_sum.p_value;
    let c1 = Outcome {
        pass: ratio >= 1.5 && p < 0.05,
        detail: format!(
            "median distinct critical NSGAII-DT {} / NSGAII {} = {ratio:.3} (>= 1.5), rank-sum p = {p:.2e} (< 0.05); counts {:?} vs {:?}",
            report.algorithm("nsga2-dt").unwrap().median_distinct_critical,
            report.algorithm("nsga2").unwrap().median_distinct_critical,
            report.distinct_counts("nsga2-dt"),
            report.distinct_counts("nsga2"),
        ),
    };
    let e = &agg.early_hv;
    let c2 = Outcome {
        pass: e.dt_median > e.nsga2_median,
        detail: format!(
            "median HV after {} of {} evaluations: NSGAII-DT {:.4} > NSGAII {:.4}; final medians {:.4} vs {:.4}",
            e.evaluations,
            report.budget,
            e.dt_median,
            e.nsga2_median,
            report.algorithm("nsga2-dt").unwrap().median_hv,
            report.algorithm("nsga2").unwrap().median_hv,
        ),
    };
    (c1, c2)
}

// ---------------------------------------------------------------- 3 and 4

fn falsify_report(name: &str) -> FalsifyReport {
    let dir = tempfile::tempdir().unwrap();
    run_falsify(&config(name, dir.path())).expect("falsification runs")
}

fn criterion_3() -> Outcome {
    let r = falsify_report("falsify_lti2.toml");
    let s = &r.surrogate;
    let mean = s.mean.unwrap_or(f64::INFINITY);
    Outcome {
        pass: s.trials == 10 && s.fr >= 8 && mean <= 20.0,
        detail: format!("lti2 `{}`: FR {}/{} (>= 8), mean real simulations {mean:.1} (<= 20)", r.requirement, s.fr, s.trials),
    }
}

fn criterion_4() -> Outcome {
    let r = falsify_report("falsify_tank.toml");
    let s = &r.surrogate;
    // Unsuccessful trials count as exceeding the budget.
    let censored = |method: &str| -> Vec<usize> {
        r.outcomes(method).into_iter().map(|o| o.unwrap_or(usize::MAX)).collect()
    };
    let (ours, base) = (censored(SURROGATE), censored(RANDOM));
    let (m_ours, m_base) = (median_usize(ours.clone()), median_usize(base.clone()));
    let within = r.trials.iter().filter(|t| t.method == SURROGATE).all(|t| t.simulations <= r.budget);
    let rb = r.random.as_ref().unwrap();
    let show = |m: f64| if m >= usize::MAX as f64 { "> budget".to_string() } else { format!("{m}") };
    Outcome {
        pass: s.trials == 10 && s.fr >= 7 && within && r.budget <= 300 && m_ours < m_base,
        detail: format!(
            "tank `{}`: FR {}/10 (>= 7) within {} simulations; median simulations {} < random baseline {} (random FR {}/10, failures counted as over budget)",
            r.requirement,
            s.fr,
            r.budget,
            show(m_ours),
            show(m_base),
            rb.fr
        ),
    }
}

// ---------------------------------------------------------------- 5

fn hv_inclusion_exclusion(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let n = points.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut vol = 1.0;
        for (k, r) in reference.iter().enumerate() {
            let corner = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| points[i][k]).fold(f64::NEG_INFINITY, f64::max);
            vol *= r - corner;
        }
        total += if mask.count_ones() % 2 == 1 { vol } else { -vol };
    }
    total
}

fn hv_monte_carlo(points: &[Vec<f64>], reference: &[f64], samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = reference.len();
    let box_vol: f64 = reference.iter().product();
    let mut hits = 0usize;
    let mut x = vec![0.0; m];
    for _ in 0..samples {
        for (k, v) in x.iter_mut().enumerate() {
            *v = rng.gen::<f64>() * reference[k];
        }
        if points.iter().any(|p| p.iter().zip(&x).all(|(a, b)| a <= b)) {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    (frac * box_vol, box_vol * (frac * (1.0 - frac) / samples as f64).sqrt())
}

fn dominates_bf(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

fn gd_brute_force(front: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for p in front {
        let mut best = f64::INFINITY;
        for r in reference {
            let mut s = 0.0;
            for (a, b) in p.iter().zip(r) {
                s += (a - b) * (a - b);
            }
            let d = f64::sqrt(s);
            if d < best {
                best = d;
            }
        }
        total += best;
    }
    total / front.len() as f64
}

fn line_front(n: usize, from: f64, to: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let x = from + (to - from) * i as f64 / (n - 1) as f64;
            vec![x, 1.0 - x]
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();

    // Hypervolume: exact inclusion-exclusion and Monte Carlo oracles.
    let hv_cases: Vec<(Vec<Vec<f64>>, Vec<f64>)> = (0..100u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
            let m = 2 + (i % 2) as usize;
            let n = rng.gen_range(1..=8);
            let reference: Vec<f64> = (0..m).map(|_| rng.gen_range(1.0..1.5)).collect();
            let pts = (0..n).map(|_| (0..m).map(|_| rng.gen::<f64>()).collect()).collect();
            (pts, reference)
        })
        .collect();
    let hv_results: Vec<(f64, f64, f64, f64)> = hv_cases
        .par_iter()
        .enumerate()
        .map(|(i, (pts, r))| {
            let hv = hypervolume(pts, r).unwrap();
            let (mc, se) = hv_monte_carlo(pts, r, 1_000_000, 7000 + i as u64);
            (hv, hv_inclusion_exclusion(pts, r), mc, se)
        })
        .collect();
    let exact_err = hv_results.iter().map(|(hv, ie, _, _)| (hv - ie).abs()).fold(0.0, f64::max);
    let mc_worst = hv_results.iter().map(|(hv, _, mc, se)| (hv - mc).abs() / se).fold(0.0, f64::max);
    if exact_err > 1e-9 {
        problems.push(format!("HV vs inclusion-exclusion error {exact_err:.2e}"));
    }
    let mc_out = hv_results.iter().filter(|(hv, _, mc, se)| (hv - mc).abs() > 3.0 * se).count();
    if mc_out > 0 {
        problems.push(format!("{mc_out} HV values outside 3 standard errors of Monte Carlo"));
    }

    // Generational distance and non-dominated filtering against brute force.
    let mut gd_mismatch = 0;
    let mut nd_mismatch = 0;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + i);
        let m = rng.gen_range(2..=3);
        let cloud = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Vec<f64>> {
            (0..n).map(|_| (0..m).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect()).collect()
        };
        let (nf, nr) = (rng.gen_range(1..=20), rng.gen_range(1..=20));
        let front = cloud(&mut rng, nf);
        let reference = cloud(&mut rng, nr);
        if generational_distance(&front, &reference).unwrap() != gd_brute_force(&front, &reference) {
            gd_mismatch += 1;
        }
        // Integer grid so ties and duplicates occur.
        let n = rng.gen_range(0..=100);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..6) as f64).collect()).collect();
        let want: Vec<Vec<f64>> =
            pts.iter().filter(|p| !pts.iter().any(|q| dominates_bf(q, p))).cloned().collect();
        if non_dominated_filter(&pts) != want {
            nd_mismatch += 1;
        }
    }
    if gd_mismatch + nd_mismatch > 0 {
        problems.push(format!("GD mismatches {gd_mismatch}, filter mismatches {nd_mismatch}"));
    }

    // Spread formula examples.
    let extremes = [vec![0.0, 1.0], vec![1.0, 0.0]];
    let ext = [extremes[0].as_slice(), extremes[1].as_slice()];
    let checks = [
        ("uniform front on the extremes", spread(&line_front(6, 0.0, 1.0), ext).unwrap(), 0.0),
        ("5 points inside", spread(&line_front(5, 0.1, 0.9), ext).unwrap(), 0.2),
        ("9 points inside", spread(&line_front(9, 0.1, 0.9), ext).unwrap(), 0.2),
        ("single point", spread(&[vec![0.5, 0.5]], ext).unwrap(), 1.0),
        ("5 points far from the extremes", spread(&line_front(5, 0.3, 0.7), ext).unwrap(), 0.6),
    ];
    for (name, got, want) in &checks {
        if (got - want).abs() > 1e-12 {
            problems.push(format!("spread {name}: {got} vs {want}"));
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "100 HV fronts: max |HV - incl/excl| {exact_err:.1e}, worst MC deviation {mc_worst:.2} standard errors; GD and filter exact on 100 instances each; {} spread examples within 1e-12",
                checks.len()
            )
        } else {
            problems.join("; ")
        },
    }
}

// ---------------------------------------------------------------- 6

fn lti2_theta() -> [f64; 4] {
    [0.5, 0.2, 1.0, 0.3]
}

fn criterion_6() -> Outcome {
    let mut models: Vec<(String, ArxModel)> = Vec::new();
    let mut worst_coef: f64 = 0.0;
    let mut worst_sim: f64 = 0.0;
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let traces = rng.gen_range(1..=4);
        let data: Vec<(TimeSeries, TimeSeries)> = (0..traces)
            .map(|_| {
                let n = rng.gen_range(20..120);
                let u = TimeSeries::scalar(0.1, (0..n).map(|_| rng.gen_range(-2.0..2.0)));
                let y = Benchmark::Lti2.simulate(&u).unwrap();
                (u, y)
            })
            .collect();
        let model = fit_arx(&data, &ArxConfig::siso(2, 2, 1)).unwrap();
        for (a, b) in model.theta[0].iter().zip(lti2_theta()) {
            worst_coef = worst_coef.max((a - b).abs());
        }
        for (u, y) in &data {
            let sim = simulate_arx(&model, u).unwrap();
            for (a, b) in sim.channel(0).iter().zip(y.channel(0)) {
                worst_sim = worst_sim.max((a - b).abs());
            }
        }
        models.push((format!("lti2 seed {seed}"), model));
        models.push((format!("lti2 nk=2 seed {seed}"), fit_arx(&data, &ArxConfig::default()).unwrap()));
        let tank: Vec<(TimeSeries, TimeSeries)> = data
            .iter()
            .map(|(u, _)| {
                let u = TimeSeries::scalar(0.1, u.channel(0).iter().map(|v| v.abs()));
                let y = Benchmark::tank().simulate(&u).unwrap();
                (u, y)
            })
            .collect();
        models.push((format!("tank seed {seed}"), fit_arx(&tank, &ArxConfig::default()).unwrap()));
        let doubled: Vec<_> = data.iter().chain(&data).cloned().collect();
        models.push((format!("doubled seed {seed}"), fit_arx(&doubled, &ArxConfig::siso(3, 2, 1)).unwrap()));
    }
    let zero = TimeSeries::scalar(0.1, vec![0.0; 30]);
    models.push(("zero data".into(), fit_arx(&[(zero.clone(), zero)], &ArxConfig::default()).unwrap()));
    let not_orthogonal: Vec<&str> =
        models.iter().filter(|(_, m)| !m.residual_orthogonal(1e-8)).map(|(n, _)| n.as_str()).collect();
    let worst_orth = models
        .iter()
        .map(|(_, m)| m.orthogonality / m.normal_scale.max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    let worst_abs = models.iter().map(|(_, m)| m.orthogonality).fold(0.0, f64::max);
    let lti2_residual_ok = models.iter().filter(|(n, _)| n.starts_with("lti2 seed")).all(|(_, m)| m.residual_norm <= 1e-8);
    Outcome {
        pass: worst_coef <= 1e-6
            && worst_sim <= 1e-6
            && not_orthogonal.is_empty()
            && worst_abs <= 1e-8
            && lti2_residual_ok,
        detail: format!(
            "max coefficient error {worst_coef:.1e} (<= 1e-6), max free-run error {worst_sim:.1e}, {} fitted models with max |Phi^T r| {worst_abs:.1e} (<= 1e-8), relative to scale {worst_orth:.1e}{}",
            models.len(),
            if not_orthogonal.is_empty() { String::new() } else { format!("; failing: {not_orthogonal:?}") }
        ),
    }
}

// ---------------------------------------------------------------- 7

fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Requirement {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        let signal = rng.gen_range(0..2);
        let bound = rng.gen_range(-3.0..3.0);
        return if rng.gen() { Requirement::Le { signal, bound } } else { Requirement::Ge { signal, bound } };
    }
    match rng.gen_range(0..5) {
        0 => random_formula(rng, depth - 1).not(),
        1 => random_formula(rng, depth - 1).and(random_formula(rng, depth - 1)),
        2 => random_formula(rng, depth - 1).or(random_formula(rng, depth - 1)),
        k => {
            // Interval ends on the sampling grid (period 0.25 is exact in binary).
            let a = rng.gen_range(0..4) as f64 * 0.25;
            let b = a + rng.gen_range(0..4) as f64 * 0.25;
            let body = random_formula(rng, depth - 1);
            if k == 3 {
                Requirement::always(a, b, body)
            } else {
                Requirement::eventually(a, b, body)
            }
        }
    }
}

/// Boolean satisfaction at sample `k`, straight from the definitions.
fn holds(f: &Requirement, y: &[Vec<f64>], period: f64, k: usize) -> bool {
    let window = |from: f64, to: f64| {
        (k..y.len()).filter(move |&j| {
            let t = (j - k) as f64 * period;
            from <= t && t <= to
        })
    };
    match f {
        Requirement::Le { signal, bound } => y[k][*signal] <= *bound,
        Requirement::Ge { signal, bound } => y[k][*signal] >= *bound,
        Requirement::Not(a) => !holds(a, y, period, k),
        Requirement::And(a, b) => holds(a, y, period, k) && holds(b, y, period, k),
        Requirement::Or(a, b) => holds(a, y, period, k) || holds(b, y, period, k),
        Requirement::Always { from, to, body } => window(*from, *to).all(|j| holds(body, y, period, j)),
        Requirement::Eventually { from, to, body } => window(*from, *to).any(|j| holds(body, y, period, j)),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let period = 0.25;
    let (mut disagree, mut zero, mut sat) = (0, 0, 0);
    for _ in 0..1000 {
        let f = random_formula(&mut rng, 4);
        let needed = (f.horizon() / period).round() as usize + 1;
        let len = needed + rng.gen_range(0..4);
        let values: Vec<Vec<f64>> = (0..len).map(|_| vec![rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)]).collect();
        let trace = TimeSeries::new(period, values);
        let rob = f.robustness(&trace).unwrap();
        let truth = holds(&f, &trace.values, period, 0);
        sat += truth as usize;
        if rob == 0.0 {
            zero += 1;
        } else if (rob > 0.0) != truth {
            disagree += 1;
        }
    }
    Outcome {
        pass: disagree == 0 && zero == 0,
        detail: format!("1000 random formula/trace pairs ({sat} satisfied): {disagree} sign disagreements, {zero} zero robustness values"),
    }
}

// ---------------------------------------------------------------- 8

fn snapshot_dir(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for name in ["compare_avp.toml", "falsify_lti2.toml", "falsify_tank.toml"] {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(name, dir.path());
        let run = |cfg: &ExperimentConfig| match name {
            "compare_avp.toml" => run_compare(cfg).map(|_| ()),
            _ => run_falsify(cfg).map(|_| ()),
        };
        run(&cfg).unwrap();
        let first = snapshot_dir(dir.path());
        std::fs::remove_dir_all(dir.path()).unwrap();
        // Same config again, this time on a single worker thread.
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        pool.install(|| run(&cfg)).unwrap();
        let second = snapshot_dir(dir.path());
        let bytes: usize = first.values().map(Vec::len).sum();
        let same = first == second;
        pass &= same && !first.is_empty();
        notes.push(format!("{name}: {} files, {bytes} bytes {}", first.len(), if same { "identical" } else { "DIFFER" }));
    }
    Outcome { pass, detail: notes.join("; ") }
}

// ---------------------------------------------------------------- 9

/// Annealing that records how many surrogate simulations each round used.
struct Counting {
    inner: AnnealingConfig,
    max_per_round: AtomicUsize,
}

impl SurrogateOptimizer for Counting {
    fn minimize(
        &self,
        f: &mut dyn FnMut(&[f64]) -> Result<f64, FalsifyError>,
        space: &SearchSpace,
        start: Option<&[f64]>,
        max_evaluations: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Minimum, FalsifyError> {
        let mut calls = 0;
        let mut counted = |x: &[f64]| {
            calls += 1;
            f(x)
        };
        let m = self.inner.minimize(&mut counted, space, start, max_evaluations, rng)?;
        self.max_per_round.fetch_max(calls, Ordering::Relaxed);
        Ok(m)
    }
}

fn dt_strategy() -> impl Strategy<Value = (DtConfig, u64)> {
    (1usize..=600, 0.0f64..1.0, 1usize..=15, 1usize..=5, 1usize..=8, 1usize..=6, 0.05f64..=1.0, any::<u64>(), any::<u64>())
        .prop_map(|(budget, init_frac, half_pop, gens, depth, leaf, threshold, seed, vseed)| {
            let cfg = DtConfig {
                budget,
                initial_samples: ((budget as f64 * init_frac) as usize).max(1),
                tree: TreeParams { max_depth: depth, min_samples_leaf: leaf },
                region_threshold: threshold,
                region_population: 2 * half_pop + 2,
                region_generations: gens,
                seed,
            };
            (cfg, vseed)
        })
}

fn falsify_strategy() -> impl Strategy<Value = (Benchmark, SignalParam, Requirement, FalsifyConfig, u64)> {
    (
        any::<bool>(),
        1usize..=6,
        any::<bool>(),
        1usize..=8,
        0.1f64..3.0,
        -1.0f64..6.0,
        1usize..=300,
        (1usize..=60, 1usize..=4, 0usize..=3, 1usize..=3, 1usize..=3),
        any::<u64>(),
    )
        .prop_map(|(tank, cp, linear, horizon_steps, amp, limit, budget, (sb, init, na, nb, nk), seed)| {
            let period = 0.2;
            let horizon = horizon_steps as f64 * 0.5;
            let (benchmark, bounds) =
                if tank { (Benchmark::tank(), (0.0, amp)) } else { (Benchmark::Lti2, (-amp, amp)) };
            let signal = SignalParam {
                mode: if linear { SignalMode::PiecewiseContinuous } else { SignalMode::Constrained },
                control_points: cp,
                interpolation: if linear {
                    sasbt::falsify::Interpolation::Linear
                } else {
                    sasbt::falsify::Interpolation::PiecewiseConstant
                },
                bounds: vec![bounds],
                horizon,
                period,
            };
            let requirement = Requirement::always(0.0, horizon, Requirement::Le { signal: 0, bound: limit });
            let cfg = FalsifyConfig {
                budget,
                surrogate_budget: sb,
                initial_samples: init,
                arx: ArxConfig::siso(na, nb, nk),
                annealing: AnnealingConfig::default(),
            };
            (benchmark, signal, requirement, cfg, seed)
        })
}

fn criterion_9() -> Outcome {
    let runner_cfg = Config { cases: 200, failure_persistence: None, ..Config::default() };
    let evaluator = AvpEvaluator::default();
    let space = evaluator.search_space();
    let mut runner = TestRunner::new_with_rng(runner_cfg.clone(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let dt_max = AtomicUsize::new(0);
    let dt_result = runner.run(&dt_strategy(), |(cfg, vseed)| {
        let variation = SearchConfig { seed: vseed, ..Default::default() };
        let out = nsga2_dt(&space, &evaluator, &cfg, &variation).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(out.archive.len() <= cfg.budget, "{} evaluations for budget {}", out.archive.len(), cfg.budget);
        prop_assert!(out.stages.iter().all(|s| s.evaluations <= cfg.budget));
        dt_max.fetch_max(out.archive.len(), Ordering::Relaxed);
        Ok(())
    });

    let mut runner = TestRunner::new_with_rng(runner_cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let sims_max = AtomicUsize::new(0);
    let surrogate_max = AtomicUsize::new(0);
    let falsified = AtomicUsize::new(0);
    let f_result = runner.run(&falsify_strategy(), |(sut, signal, req, cfg, seed)| {
        let counting = Counting { inner: cfg.annealing.clone(), max_per_round: AtomicUsize::new(0) };
        let out = falsify_with(&sut, &req, &signal, &cfg, &counting, seed).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(out.simulations <= cfg.budget && out.simulations <= 300);
        prop_assert_eq!(out.rounds.len(), out.simulations);
        let per_round = counting.max_per_round.load(Ordering::Relaxed);
        prop_assert!(per_round <= cfg.surrogate_budget && per_round <= 300);
        if out.falsified {
            let y = sut.simulate(&signal.generate(out.input.as_ref().unwrap()).unwrap()).unwrap();
            prop_assert!(req.robustness(&y).unwrap() < 0.0);
            falsified.fetch_add(1, Ordering::Relaxed);
        } else {
            prop_assert_eq!(out.simulations, cfg.budget);
        }
        sims_max.fetch_max(out.simulations, Ordering::Relaxed);
        surrogate_max.fetch_max(per_round, Ordering::Relaxed);
        Ok(())
    });
    let mut problems = Vec::new();
    if let Err(e) = &dt_result {
        problems.push(format!("nsga2_dt: {e}"));
    }
    if let Err(e) = &f_result {
        problems.push(format!("falsify: {e}"));
    }
    Outcome {
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "200 nsga2_dt configs within budget (largest archive {}); 200 falsify configs within budget (max {} real, max {} surrogate per round, {} falsified and confirmed)",
                dt_max.load(Ordering::Relaxed),
                sims_max.load(Ordering::Relaxed),
                surrogate_max.load(Ordering::Relaxed),
                falsified.load(Ordering::Relaxed)
            )
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let (c1, c2) = compare_criteria();
    let results = vec![
        ("distinct-critical ratio", c1),
        ("early hypervolume", c2),
        ("falsification, exact surrogate", criterion_3()),
        ("falsification, approximate surrogate", criterion_4()),
        ("indicator oracles", criterion_5()),
        ("ARX identifiability", criterion_6()),
        ("robustness semantics", criterion_7()),
        ("determinism", criterion_8()),
        ("budget safety", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
