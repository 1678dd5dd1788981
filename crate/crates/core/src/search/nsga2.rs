use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::operators::{polynomial_mutation, sbx_crossover, tournament};
use super::{
    crowding_distance, lhs_sample, non_dominated_sort, EvaluationArchive, Evaluation, Evaluator,
    Individual, SearchConfig, SearchError, SearchSpace,
};

/// Initial-population member. Pre-evaluated seeds (e.g. reused archive rows)
/// are not sent to the evaluator again.
#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    pub genome: Vec<f64>,
    pub evaluated: Option<(Evaluation, u64)>,
}

impl Seed {
    pub fn fresh(genome: Vec<f64>) -> Self {
        Self { genome, evaluated: None }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub population: Vec<Individual>,
    /// Archive length after the initial population and after each generation.
    pub generation_marks: Vec<usize>,
}

/// NSGA-II over a fixed box.
#[derive(Debug, Clone)]
pub struct Nsga2 {
    space: SearchSpace,
    config: SearchConfig,
}

impl Nsga2 {
    pub fn new(space: SearchSpace, config: SearchConfig) -> Result<Self, SearchError> {
        config.validate()?;
        Ok(Self { space, config })
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    /// Upper bound on the real evaluations of a run given `preevaluated`
    /// reusable seeds; repeated genomes are not evaluated again.
    pub fn evaluation_cost(&self, preevaluated: usize) -> usize {
        let pop = self.config.population;
        pop.saturating_sub(preevaluated) + pop * self.config.generations
    }

    /// Runs the generational loop, appending every evaluation to `archive`.
    ///
    /// Missing initial members are filled with an LHS sample of the box; surplus
    /// seeds beyond the population size are dropped.
    pub fn run<E: Evaluator + ?Sized>(
        &self,
        evaluator: &E,
        initial: Vec<Seed>,
        archive: &mut EvaluationArchive,
    ) -> Result<RunOutcome, SearchError> {
        let cfg = &self.config;
        let pop_size = cfg.population;
        let n = self.space.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

        let mut seeds = initial;
        seeds.truncate(pop_size);
        for s in &seeds {
            if !self.space.contains(&s.genome) {
                return Err(SearchError::OutOfBounds { genome: s.genome.clone() });
            }
        }
        let missing = pop_size - seeds.len();
        seeds.extend(lhs_sample(&self.space, missing, &mut rng).into_iter().map(Seed::fresh));

        let mut population = Vec::with_capacity(pop_size);
        let mut fresh = Vec::new();
        for s in seeds {
            match s.evaluated {
                Some((ev, idx)) => population.push(individual(s.genome, ev, idx)),
                None => fresh.push(s.genome),
            }
        }
        population.extend(self.evaluate_batch(evaluator, fresh, archive)?);
        let mut marks = vec![archive.len()];
        assign_rank_and_crowding(&mut population);

        let pm = cfg.mutation_probability_for(n);
        for _ in 0..cfg.generations {
            let mut children = Vec::with_capacity(pop_size);
            while children.len() < pop_size {
                let a = tournament(&population, cfg.tournament_size, &mut rng);
                let b = tournament(&population, cfg.tournament_size, &mut rng);
                let (mut c1, mut c2) = sbx_crossover(
                    &a.genome,
                    &b.genome,
                    &self.space,
                    cfg.crossover_probability,
                    cfg.sbx_eta,
                    &mut rng,
                );
                polynomial_mutation(&mut c1, &self.space, pm, cfg.mutation_eta, &mut rng);
                polynomial_mutation(&mut c2, &self.space, pm, cfg.mutation_eta, &mut rng);
                self.space.clamp(&mut c1);
                self.space.clamp(&mut c2);
                children.push(c1);
                children.push(c2);
            }
            children.truncate(pop_size);
            let offspring = self.evaluate_batch(evaluator, children, archive)?;
            population.extend(offspring);
            population = environmental_selection(population, pop_size);
            marks.push(archive.len());
        }
        Ok(RunOutcome { population, generation_marks: marks })
    }

    fn evaluate_batch<E: Evaluator + ?Sized>(
        &self,
        evaluator: &E,
        genomes: Vec<Vec<f64>>,
        archive: &mut EvaluationArchive,
    ) -> Result<Vec<Individual>, SearchError> {
        if let Some(g) = genomes.iter().find(|g| !self.space.contains(g)) {
            return Err(SearchError::OutOfBounds { genome: g.clone() });
        }
        let evaluated = evaluate_all(evaluator, genomes, archive)?;
        Ok(evaluated.into_iter().map(|(g, ev, idx)| individual(g, ev, idx)).collect())
    }
}

/// Evaluates `genomes` (in parallel) and appends them to `archive` in input
/// order, returning each genome with its evaluation and evaluation index.
///
/// A genome already in the archive, or repeated within the batch, reuses the
/// earlier evaluation and adds no row.
pub fn evaluate_all<E: Evaluator + ?Sized>(
    evaluator: &E,
    genomes: Vec<Vec<f64>>,
    archive: &mut EvaluationArchive,
) -> Result<Vec<(Vec<f64>, Evaluation, u64)>, SearchError> {
    let m = evaluator.n_objectives();
    let mut pending: Vec<&Vec<f64>> = Vec::new();
    let mut batch_seen = std::collections::HashSet::new();
    for g in &genomes {
        let key: Vec<u64> = g.iter().map(|x| (x + 0.0).to_bits()).collect();
        if archive.lookup(g).is_none() && batch_seen.insert(key) {
            pending.push(g);
        }
    }
    // Order-preserving collect keeps the archive independent of thread scheduling.
    let results: Vec<Result<Evaluation, String>> = pending.par_iter().map(|g| evaluator.evaluate(g)).collect();
    for (genome, result) in pending.into_iter().zip(results) {
        let ev = result.map_err(|reason| SearchError::Evaluation { genome: genome.clone(), reason })?;
        if ev.objectives.len() != m || ev.objectives.iter().any(|o| o.is_nan()) {
            return Err(SearchError::Evaluation {
                genome: genome.clone(),
                reason: format!("expected {m} non-NaN objectives, got {:?}", ev.objectives),
            });
        }
        archive.push(genome.clone(), ev);
    }
    let out = genomes
        .into_iter()
        .map(|genome| {
            let row = archive.lookup(&genome).expect("evaluated above");
            let ev = Evaluation { objectives: row.objectives.clone(), critical: row.critical };
            let idx = row.eval_index;
            (genome, ev, idx)
        })
        .collect();
    Ok(out)
}

fn individual(genome: Vec<f64>, ev: Evaluation, eval_index: u64) -> Individual {
    Individual {
        genome,
        objectives: ev.objectives,
        critical: ev.critical,
        rank: 0,
        crowding: 0.0,
        eval_index,
    }
}

pub(crate) fn assign_rank_and_crowding(population: &mut [Individual]) {
    let fronts = {
        let objs: Vec<&[f64]> = population.iter().map(|i| i.objectives.as_slice()).collect();
        non_dominated_sort(&objs)
    };
    for (rank, front) in fronts.iter().enumerate() {
        let crowd = {
            let members: Vec<&[f64]> =
                front.iter().map(|&i| population[i].objectives.as_slice()).collect();
            crowding_distance(&members)
        };
        for (&i, c) in front.iter().zip(crowd) {
            population[i].rank = rank;
            population[i].crowding = c;
        }
    }
}

/// Keeps `size` individuals: whole fronts in rank order, then the least crowded
/// members of the first front that does not fit.
fn environmental_selection(mut combined: Vec<Individual>, size: usize) -> Vec<Individual> {
    assign_rank_and_crowding(&mut combined);
    combined.sort_by(|a, b| {
        a.rank
            .cmp(&b.rank)
            .then(b.crowding.total_cmp(&a.crowding))
            .then(a.eval_index.cmp(&b.eval_index))
    });
    combined.truncate(size);
    // Crowding is recomputed on the survivors so the next tournament sees the
    // population it actually draws from.
    assign_rank_and_crowding(&mut combined);
    combined
}

/// Convenience wrapper: a fresh NSGA-II run with its own archive.
pub fn evolve<E: Evaluator + ?Sized>(
    space: &SearchSpace,
    config: &SearchConfig,
    evaluator: &E,
    initial: Option<Vec<Vec<f64>>>,
) -> Result<(Vec<Individual>, EvaluationArchive), SearchError> {
    let nsga = Nsga2::new(space.clone(), config.clone())?;
    let mut archive = EvaluationArchive::new(format!("nsga2-s{}", config.seed));
    let seeds = initial.unwrap_or_default().into_iter().map(Seed::fresh).collect();
    let outcome = nsga.run(evaluator, seeds, &mut archive)?;
    Ok((outcome.population, archive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::dominates;

    fn bowl() -> (usize, impl Fn(&[f64]) -> Evaluation + Sync) {
        (1, |g: &[f64]| Evaluation {
            objectives: vec![g.iter().map(|x| x * x).sum()],
            critical: false,
        })
    }

    fn schaffer() -> (usize, impl Fn(&[f64]) -> Evaluation + Sync) {
        (2, |g: &[f64]| Evaluation {
            objectives: vec![g[0] * g[0], (g[0] - 2.0).powi(2)],
            critical: g[0] > 1.0,
        })
    }

    fn cube() -> SearchSpace {
        SearchSpace::new(vec![-1.0; 3], vec![1.0; 3]).unwrap()
    }

    #[test]
    fn zero_generations_evaluates_initial_population_only() {
        let cfg = SearchConfig { population: 20, generations: 0, seed: 5, ..Default::default() };
        let (pop, archive) = evolve(&cube(), &cfg, &bowl(), None).unwrap();
        assert_eq!(pop.len(), 20);
        assert_eq!(archive.len(), 20);
    }

    #[test]
    fn converges_on_convex_bowl() {
        let cfg = SearchConfig { population: 20, generations: 50, seed: 1, ..Default::default() };
        let (_, archive) = evolve(&cube(), &cfg, &bowl(), None).unwrap();
        let best = archive
            .rows()
            .iter()
            .min_by(|a, b| a.objectives[0].total_cmp(&b.objectives[0]))
            .unwrap();
        assert!(best.genome.iter().all(|x| x.abs() < 0.05), "{:?}", best.genome);
    }

    #[test]
    fn archive_length_and_bounds() {
        let space = SearchSpace::new(vec![-5.0], vec![5.0]).unwrap();
        let cfg = SearchConfig { population: 12, generations: 7, seed: 3, ..Default::default() };
        let (_, archive) = evolve(&space, &cfg, &schaffer(), None).unwrap();
        assert_eq!(archive.len(), 12 * 8);
        assert!(archive.rows().iter().all(|r| space.contains(&r.genome)));
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let space = SearchSpace::new(vec![-5.0], vec![5.0]).unwrap();
        let cfg = SearchConfig { population: 10, generations: 5, seed: 77, ..Default::default() };
        let a = evolve(&space, &cfg, &schaffer(), None).unwrap().1;
        let b = evolve(&space, &cfg, &schaffer(), None).unwrap().1;
        assert_eq!(a, b);
        let other = SearchConfig { seed: 78, ..cfg };
        assert_ne!(a, evolve(&space, &other, &schaffer(), None).unwrap().1);
    }

    #[test]
    fn evaluator_failure_reports_genome() {
        let failing = (1usize, |g: &[f64]| Evaluation { objectives: vec![f64::NAN * g[0]], critical: false });
        let cfg = SearchConfig { population: 4, generations: 1, ..Default::default() };
        match evolve(&cube(), &cfg, &failing, None) {
            Err(SearchError::Evaluation { genome, .. }) => assert_eq!(genome.len(), 3),
            other => panic!("expected evaluation error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_bounds_initial_population() {
        let cfg = SearchConfig { population: 4, generations: 0, ..Default::default() };
        let err = evolve(&cube(), &cfg, &bowl(), Some(vec![vec![2.0, 0.0, 0.0]])).unwrap_err();
        assert!(matches!(err, SearchError::OutOfBounds { .. }));
    }

    #[test]
    fn preevaluated_seeds_are_not_reevaluated() {
        let nsga = Nsga2::new(
            cube(),
            SearchConfig { population: 6, generations: 2, ..Default::default() },
        )
        .unwrap();
        let ev = Evaluation { objectives: vec![0.0], critical: false };
        let seeds = vec![
            Seed { genome: vec![0.0; 3], evaluated: Some((ev.clone(), 100)) },
            Seed { genome: vec![0.5; 3], evaluated: Some((ev, 101)) },
        ];
        let mut archive = EvaluationArchive::new("t");
        let out = nsga.run(&bowl(), seeds, &mut archive).unwrap();
        assert_eq!(nsga.evaluation_cost(2), 4 + 12);
        assert!(archive.len() <= nsga.evaluation_cost(2));
        assert_eq!(out.generation_marks[0], 4);
        assert!(out.generation_marks.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*out.generation_marks.last().unwrap(), archive.len());
        let mut genomes: Vec<_> = archive.rows().iter().map(|r| format!("{:?}", r.genome)).collect();
        genomes.sort();
        genomes.dedup();
        assert_eq!(genomes.len(), archive.len());
    }

    #[test]
    fn copied_children_reuse_evaluations() {
        let cfg = SearchConfig {
            population: 8,
            generations: 5,
            crossover_probability: 0.0,
            mutation_probability: Some(0.0),
            ..Default::default()
        };
        let (_, archive) = evolve(&cube(), &cfg, &bowl(), None).unwrap();
        assert_eq!(archive.len(), 8);
    }

    #[test]
    fn selection_keeps_first_front_before_later_ones() {
        // Combined population with a three-member first front and size-3 survivors.
        let mk = |o: [f64; 2], idx: u64| Individual {
            genome: vec![0.0],
            objectives: o.to_vec(),
            critical: false,
            rank: 0,
            crowding: 0.0,
            eval_index: idx,
        };
        let combined = vec![
            mk([3.0, 3.0], 0),
            mk([0.0, 2.0], 1),
            mk([4.0, 4.0], 2),
            mk([1.0, 1.0], 3),
            mk([2.0, 0.0], 4),
        ];
        let kept = environmental_selection(combined, 3);
        let mut idx: Vec<u64> = kept.iter().map(|i| i.eval_index).collect();
        idx.sort_unstable();
        assert_eq!(idx, vec![1, 3, 4]);
        assert!(kept.iter().all(|k| !kept.iter().any(|o| dominates(&o.objectives, &k.objectives))));
    }
}
