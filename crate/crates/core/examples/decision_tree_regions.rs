//! Fits a classification tree to random samples of a system with a known
//! failure box and prints the critical regions it extracts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sasbt::dt::{extract_regions, fit_tree, BoxTargetEvaluator, TreeParams};
use sasbt::search::{lhs_sample, Evaluator, SearchSpace};

fn main() {
    let space = SearchSpace::new(vec![0.0, 0.0, 0.0], vec![10.0, 10.0, 10.0]).unwrap();
    let target = SearchSpace::new(vec![6.0, 1.0, 2.0], vec![9.0, 4.0, 8.0]).unwrap();
    let sut = BoxTargetEvaluator::new(space.clone(), target.clone());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<(Vec<f64>, bool)> = lhs_sample(&space, 400, &mut rng)
        .into_iter()
        .map(|g| {
            let critical = sut.evaluate(&g).unwrap().critical;
            (g, critical)
        })
        .collect();
    let critical = samples.iter().filter(|s| s.1).count();
    println!("{} samples, {critical} critical; true box {:?} .. {:?}", samples.len(), target.lower(), target.upper());

    for params in [TreeParams { max_depth: 2, min_samples_leaf: 3 }, TreeParams { max_depth: 6, min_samples_leaf: 3 }] {
        let tree = fit_tree(&samples, &space, &params);
        println!(
            "\ndepth limit {}: depth {}, {} leaves, training accuracy {:.3}",
            params.max_depth,
            tree.depth(),
            tree.leaves().len(),
            tree.training_accuracy(&samples)
        );
        for r in extract_regions(&tree, 0.5) {
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:5.2}")).collect::<Vec<_>>().join(" ");
            println!(
                "  [{}] .. [{}]  {}/{} critical",
                fmt(r.bounds.lower()),
                fmt(r.bounds.upper()),
                r.critical,
                r.total
            );
        }
    }
}
