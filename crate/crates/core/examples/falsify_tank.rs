//! Falsifies a level limit on the draining tank with the ARX surrogate loop
//! and with random sampling.

use sasbt::falsify::{
    falsification_stats, falsify, random_search, ArxConfig, Benchmark, FalsifyConfig, Requirement, SignalMode,
    SignalParam, StatsRow, STATS_HEADER,
};

fn main() {
    let sut = Benchmark::tank();
    let req: Requirement = "always[0,10] (y0 <= 3.3)".parse().unwrap();
    let signal = SignalParam {
        mode: SignalMode::Constrained,
        bounds: vec![(0.0, 2.0)],
        horizon: 10.0,
        ..Default::default()
    };
    let cfg = FalsifyConfig { arx: ArxConfig::siso(2, 2, 2), ..Default::default() };

    let mut ours = Vec::new();
    let mut baseline = Vec::new();
    for seed in 0..10 {
        let o = falsify(&sut, &req, &signal, &cfg, seed).unwrap();
        let r = random_search(&sut, &req, &signal, cfg.budget, seed).unwrap();
        if seed == 0 {
            for log in &o.rounds {
                println!(
                    "round {:>2}: surrogate {:>8}  real {:>8.4}",
                    log.round,
                    log.surrogate_robustness.map_or("-".into(), |v| format!("{v:.4}")),
                    log.real_robustness
                );
            }
        }
        ours.push(o.falsified.then_some(o.simulations));
        baseline.push(r.falsified.then_some(r.simulations));
    }
    println!("\n{STATS_HEADER}");
    for (name, outcomes) in [("tank", &ours), ("tank-random", &baseline)] {
        println!("{}", StatsRow::new(name, &falsification_stats(outcomes)));
    }
}
