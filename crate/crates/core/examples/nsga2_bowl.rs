//! NSGA-II on a two-objective toy problem whose Pareto set is the segment
//! between (0, 0) and (1, 1).

use sasbt::indicators::{hypervolume, non_dominated_filter};
use sasbt::search::{evolve, Evaluation, SearchConfig, SearchSpace};

fn main() {
    let space = SearchSpace::new(vec![-2.0, -2.0], vec![3.0, 3.0]).unwrap();
    let problem = (2, |g: &[f64]| Evaluation {
        objectives: vec![g[0].powi(2) + g[1].powi(2), (g[0] - 1.0).powi(2) + (g[1] - 1.0).powi(2)],
        critical: false,
    });

    for generations in [0, 5, 20, 60] {
        let cfg = SearchConfig { population: 40, generations, seed: 1, ..Default::default() };
        let (population, archive) = evolve(&space, &cfg, &problem, None).unwrap();
        let front = population.iter().filter(|i| i.rank == 0).count();
        let objectives: Vec<Vec<f64>> = population.iter().map(|i| i.objectives.clone()).collect();
        let nd = non_dominated_filter(&objectives);
        let hv = hypervolume(&nd, &[20.0, 20.0]).unwrap();
        let off_set = population
            .iter()
            .map(|i| (i.genome[0] - i.genome[1]).abs())
            .fold(0.0, f64::max);
        println!(
            "{generations:>3} generations: {:>5} evaluations, {front:>2} on the first front, HV {hv:.4}, max |x - y| {off_set:.3}",
            archive.len()
        );
    }
}
