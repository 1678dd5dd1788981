//! Small NSGA-II versus NSGAII-DT comparison written to a temporary
//! directory, then replayed from the stored archives.

use sasbt::harness::{replay, run_compare, ExperimentConfig, ExperimentKind};

fn main() {
    let out = std::env::temp_dir().join("sasbt-compare-example");
    let mut cfg = ExperimentConfig { kind: ExperimentKind::Compare, repetitions: 4, out: out.clone(), ..Default::default() };
    cfg.compare.nsga2.population = 20;
    cfg.compare.nsga2.generations = 9;
    cfg.compare.dt.budget = 200;
    cfg.compare.dt.initial_samples = 40;

    let report = run_compare(&cfg).unwrap();
    for a in &report.aggregates.algorithms {
        println!(
            "{:<9} median distinct critical {:>5.1}  HV {:.4}  GD {:.4}  spread {:.4}",
            a.algorithm, a.median_distinct_critical, a.median_hv, a.median_gd, a.median_spread
        );
    }
    let agg = &report.aggregates;
    println!("ratio {:?}, rank-sum p {:.4}", agg.distinct_ratio, agg.rank_sum.p_value);
    println!(
        "HV after {} evaluations: NSGAII-DT {:.4}, NSGA-II {:.4}",
        agg.early_hv.evaluations, agg.early_hv.dt_median, agg.early_hv.nsga2_median
    );
    let replayed = replay(&out).unwrap();
    println!("replay from {} {}", out.display(), if replayed.matches { "matches" } else { "differs" });
}
