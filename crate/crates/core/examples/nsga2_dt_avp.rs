//! One NSGAII-DT run on the parking-lot simulator next to plain NSGA-II with
//! the same budget and seed.
//!
//! cargo run --release --example nsga2_dt_avp -- [seed]

use sasbt::dt::{nsga2_dt, DtConfig};
use sasbt::indicators::{distinct_critical, DistinctnessPolicy};
use sasbt::search::{evolve, SearchConfig};
use sasbt::sim::AvpEvaluator;

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let evaluator = AvpEvaluator::default();
    let space = evaluator.search_space();
    let policy = DistinctnessPolicy::AnyDifference;

    let plain = SearchConfig { population: 40, generations: 24, seed, ..Default::default() };
    let (_, archive) = evolve(&space, &plain, &evaluator, None).unwrap();
    println!(
        "NSGA-II     {} evaluations, {} distinct critical",
        archive.len(),
        distinct_critical(&archive.critical_genomes(), &policy)
    );

    let cfg = DtConfig { seed, ..Default::default() };
    let out = nsga2_dt(&space, &evaluator, &cfg, &SearchConfig::default()).unwrap();
    println!(
        "NSGAII-DT   {} evaluations, {} distinct critical, {} tree iterations",
        out.archive.len(),
        distinct_critical(&out.archive.critical_genomes(), &policy),
        out.iterations.len()
    );
    for it in out.iterations.iter().take(5) {
        let found: usize = it.regions.iter().map(|r| r.critical_found).sum();
        println!(
            "  iteration {:>2}: archive {:>4}, {} regions{}, {found} critical found",
            it.iteration,
            it.archive_size,
            it.regions.len(),
            if it.global_fallback { " (global fallback)" } else { "" }
        );
    }
    println!("final critical regions:");
    for r in &out.final_regions {
        println!(
            "  v0c {:5.2}..{:5.2}  v0p {:4.2}..{:4.2}  t_wait {:4.2}..{:4.2}  {:.2} critical",
            r.bounds.lower()[0],
            r.bounds.upper()[0],
            r.bounds.lower()[1],
            r.bounds.upper()[1],
            r.bounds.lower()[2],
            r.bounds.upper()[2],
            r.critical_fraction
        );
    }
}
