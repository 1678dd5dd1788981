use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{extract_regions, fit_tree, CriticalRegion, DtError, TreeParams};
use crate::search::{
    evaluate_all, lhs_sample, non_dominated_sort, ArchiveRow, Evaluator, EvaluationArchive, Evaluation, Nsga2,
    SearchConfig, SearchSpace, Seed,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DtConfig {
    /// Real evaluations, initial sample included.
    pub budget: usize,
    pub initial_samples: usize,
    pub tree: TreeParams,
    /// Minimum critical fraction of a leaf to become a region.
    pub region_threshold: f64,
    pub region_population: usize,
    pub region_generations: usize,
    pub seed: u64,
}

impl Default for DtConfig {
    fn default() -> Self {
        Self {
            budget: 1000,
            initial_samples: 50,
            tree: TreeParams::default(),
            region_threshold: 0.5,
            region_population: 10,
            region_generations: 2,
            seed: 0,
        }
    }
}

impl DtConfig {
    pub fn validate(&self) -> Result<(), DtError> {
        let bad = |m: String| Err(DtError::InvalidConfig(m));
        if self.initial_samples == 0 {
            return bad("initial sample size must be positive".into());
        }
        if self.budget < self.initial_samples {
            return bad(format!(
                "budget {} is smaller than the initial sample {}",
                self.budget, self.initial_samples
            ));
        }
        if !(self.region_threshold > 0.0 && self.region_threshold <= 1.0) {
            return bad(format!("region threshold {} not in (0, 1]", self.region_threshold));
        }
        if self.region_generations == 0 {
            return bad("region runs need at least one generation".into());
        }
        Ok(())
    }
}

/// Archive length at the end of a search stage (initial sample or one generation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageMark {
    pub stage: String,
    pub evaluations: usize,
}

/// One NSGA-II run confined to a region box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRun {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub critical_fraction: f64,
    /// Archive members that seeded the run.
    pub seeded: usize,
    pub evaluations: usize,
    pub critical_found: usize,
}

/// One fit–extract–search round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub iteration: usize,
    pub archive_size: usize,
    /// No leaf qualified, so the round searched the whole space.
    pub global_fallback: bool,
    pub regions: Vec<RegionRun>,
}

#[derive(Debug, Clone)]
pub struct DtOutcome {
    pub archive: EvaluationArchive,
    pub final_regions: Vec<CriticalRegion>,
    pub stages: Vec<StageMark>,
    pub iterations: Vec<IterationReport>,
}

fn training_set(archive: &EvaluationArchive) -> Vec<(&[f64], bool)> {
    archive.rows().iter().map(|r| (r.genome.as_slice(), r.critical)).collect()
}

/// Archive rows ordered fittest first: non-dominated rank, then evaluation order.
fn seeds_from(rows: Vec<&ArchiveRow>, limit: usize) -> Vec<Seed> {
    let objs: Vec<&[f64]> = rows.iter().map(|r| r.objectives.as_slice()).collect();
    let mut ordered: Vec<usize> = Vec::with_capacity(rows.len());
    for mut front in non_dominated_sort(&objs) {
        front.sort_by_key(|&i| rows[i].eval_index);
        ordered.extend(front);
    }
    ordered
        .into_iter()
        .take(limit)
        .map(|i| {
            let r = rows[i];
            Seed {
                genome: r.genome.clone(),
                evaluated: Some((
                    Evaluation { objectives: r.objectives.clone(), critical: r.critical },
                    r.eval_index,
                )),
            }
        })
        .collect()
}

/// Runs NSGAII-DT until the next region run would overrun `cfg.budget`.
///
/// `variation` supplies the NSGA-II operator settings; its population,
/// generation count and seed are replaced by the per-region values.
pub fn nsga2_dt<E: Evaluator + ?Sized>(
    space: &SearchSpace,
    evaluator: &E,
    cfg: &DtConfig,
    variation: &SearchConfig,
) -> Result<DtOutcome, DtError> {
    cfg.validate()?;
    let region_cfg = SearchConfig {
        population: cfg.region_population,
        generations: cfg.region_generations,
        ..variation.clone()
    };
    region_cfg.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut archive = EvaluationArchive::new(format!("nsga2dt-s{}", cfg.seed));
    let initial = lhs_sample(space, cfg.initial_samples, &mut rng);
    evaluate_all(evaluator, initial, &mut archive)?;
    let mut stages = vec![StageMark { stage: "initial".into(), evaluations: archive.len() }];
    let mut iterations = Vec::new();

    let mut final_regions;
    let mut iteration = 0;
    'outer: loop {
        let tree = fit_tree(&training_set(&archive), space, &cfg.tree);
        final_regions = extract_regions(&tree, cfg.region_threshold);
        let global_fallback = final_regions.is_empty();
        let targets: Vec<(SearchSpace, f64, Vec<usize>)> = if global_fallback {
            vec![(space.clone(), 0.0, (0..archive.len()).collect())]
        } else {
            final_regions
                .iter()
                .map(|r| (r.bounds.clone(), r.critical_fraction, r.members.clone()))
                .collect()
        };
        let mut report = IterationReport {
            iteration,
            archive_size: archive.len(),
            global_fallback,
            regions: Vec::new(),
        };
        let mut exhausted = false;
        for (r, (bounds, fraction, members)) in targets.into_iter().enumerate() {
            let rows: Vec<&ArchiveRow> = members.iter().map(|&m| &archive.rows()[m]).collect();
            let seeds = seeds_from(rows, cfg.region_population);
            let run_cfg = SearchConfig { seed: rng.next_u64(), ..region_cfg.clone() };
            let nsga = Nsga2::new(bounds.clone(), run_cfg)?;
            let cost = nsga.evaluation_cost(seeds.len());
            if archive.len() + cost > cfg.budget {
                exhausted = true;
                break;
            }
            let before = archive.len();
            let seeded = seeds.len();
            let outcome = nsga.run(evaluator, seeds, &mut archive)?;
            for (g, &mark) in outcome.generation_marks.iter().enumerate() {
                stages.push(StageMark { stage: format!("it{iteration}-r{r}-g{g}"), evaluations: mark });
            }
            report.regions.push(RegionRun {
                lower: bounds.lower().to_vec(),
                upper: bounds.upper().to_vec(),
                critical_fraction: fraction,
                seeded,
                evaluations: archive.len() - before,
                critical_found: archive.rows()[before..].iter().filter(|r| r.critical).count(),
            });
        }
        iterations.push(report);
        if exhausted {
            break 'outer;
        }
        iteration += 1;
    }
    Ok(DtOutcome { archive, final_regions, stages, iterations })
}
