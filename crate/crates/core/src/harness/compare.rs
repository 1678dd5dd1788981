use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{median, plots, rank_sum_test, read_file, to_json, write_file, ExperimentConfig, HarnessError, RankSum};
use crate::dt::{nsga2_dt, CriticalRegion, DtConfig, IterationReport, StageMark};
use crate::indicators::{DistinctnessPolicy, IndicatorSnapshot, ReferenceSet};
use crate::search::{EvaluationArchive, Nsga2, SearchConfig};
use crate::sim::AvpEvaluator;

pub const NSGA2: &str = "nsga2";
pub const NSGA2_DT: &str = "nsga2-dt";

/// Indicators of a complete run, computable from its archive and the shared reference set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub evaluations: usize,
    pub critical: usize,
    pub distinct_critical: usize,
    pub hv: f64,
    pub gd: f64,
    pub spread: f64,
    /// Hypervolume of the archive prefix at the early snapshot.
    pub early_hv: f64,
}

/// One algorithm run. Paths are relative to the output directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub algorithm: String,
    pub repetition: usize,
    pub seed: u64,
    pub archive: PathBuf,
    pub indicators: PathBuf,
    pub regions: Option<PathBuf>,
    /// Measured, never persisted.
    #[serde(skip)]
    pub wall_time_s: f64,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub runs: usize,
    pub median_distinct_critical: f64,
    pub median_hv: f64,
    pub median_gd: f64,
    pub median_spread: f64,
    pub median_early_hv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EarlyHv {
    pub fraction: f64,
    pub evaluations: usize,
    pub nsga2_median: f64,
    pub dt_median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub algorithms: Vec<AlgorithmSummary>,
    /// Median distinct critical scenarios of NSGAII-DT over NSGA-II; absent when the denominator is zero.
    pub distinct_ratio: Option<f64>,
    /// NSGAII-DT counts against NSGA-II counts.
    pub rank_sum: RankSum,
    pub early_hv: EarlyHv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub budget: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub distinctness: DistinctnessPolicy,
    pub snapshot_cadence: Vec<String>,
    pub seconds_per_simulation: f64,
    /// Budget times the assumed cost of one simulation.
    pub estimated_seconds_per_run: f64,
    pub aggregates: Aggregates,
    pub runs: Vec<RunRecord>,
}

impl CompareReport {
    pub fn algorithm(&self, tag: &str) -> Option<&AlgorithmSummary> {
        self.aggregates.algorithms.iter().find(|a| a.algorithm == tag)
    }

    pub fn distinct_counts(&self, tag: &str) -> Vec<usize> {
        self.runs.iter().filter(|r| r.algorithm == tag).map(|r| r.summary.distinct_critical).collect()
    }

    pub fn early_hvs(&self, tag: &str) -> Vec<f64> {
        self.runs.iter().filter(|r| r.algorithm == tag).map(|r| r.summary.early_hv).collect()
    }
}

struct Run {
    record: RunRecord,
    archive: EvaluationArchive,
    stages: Vec<StageMark>,
    regions: Option<(Vec<IterationReport>, Vec<CriticalRegion>)>,
}

fn runtime(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Runtime(e.to_string())
}

fn objectives(a: &EvaluationArchive) -> Vec<Vec<f64>> {
    a.rows().iter().map(|r| r.objectives.clone()).collect()
}

fn reference_of<'a>(archives: impl Iterator<Item = &'a EvaluationArchive>) -> Result<ReferenceSet, HarnessError> {
    let points: Vec<Vec<f64>> = archives.flat_map(objectives).collect();
    ReferenceSet::from_points(points.iter()).map_err(runtime)
}

fn snapshot(
    reference: &ReferenceSet,
    archive: &EvaluationArchive,
    n: usize,
    policy: &DistinctnessPolicy,
) -> Result<IndicatorSnapshot, HarnessError> {
    let p = archive.prefix(n.max(1));
    reference.snapshot(&objectives(&p), &p.critical_genomes(), policy).map_err(runtime)
}

fn prefix_len(fraction: f64, budget: usize) -> usize {
    ((fraction * budget as f64).round() as usize).max(1)
}

fn summarize(
    reference: &ReferenceSet,
    archive: &EvaluationArchive,
    policy: &DistinctnessPolicy,
    early: usize,
) -> Result<RunSummary, HarnessError> {
    let full = snapshot(reference, archive, archive.len(), policy)?;
    Ok(RunSummary {
        evaluations: archive.len(),
        critical: archive.rows().iter().filter(|r| r.critical).count(),
        distinct_critical: full.distinct_critical,
        hv: full.hv,
        gd: full.gd,
        spread: full.spread,
        early_hv: snapshot(reference, archive, early, policy)?.hv,
    })
}

fn aggregate(runs: &[(&str, RunSummary)], early_fraction: f64, early: usize) -> Aggregates {
    let pick = |tag: &str, f: fn(&RunSummary) -> f64| -> Vec<f64> {
        runs.iter().filter(|(a, _)| *a == tag).map(|(_, s)| f(s)).collect()
    };
    let algorithms: Vec<AlgorithmSummary> = [NSGA2, NSGA2_DT]
        .iter()
        .map(|&tag| AlgorithmSummary {
            algorithm: tag.to_string(),
            runs: runs.iter().filter(|(a, _)| *a == tag).count(),
            median_distinct_critical: median(&pick(tag, |s| s.distinct_critical as f64)),
            median_hv: median(&pick(tag, |s| s.hv)),
            median_gd: median(&pick(tag, |s| s.gd)),
            median_spread: median(&pick(tag, |s| s.spread)),
            median_early_hv: median(&pick(tag, |s| s.early_hv)),
        })
        .collect();
    let (base, dt) = (&algorithms[0], &algorithms[1]);
    let distinct_ratio = (base.median_distinct_critical > 0.0)
        .then(|| dt.median_distinct_critical / base.median_distinct_critical);
    let rank_sum = rank_sum_test(
        &pick(NSGA2_DT, |s| s.distinct_critical as f64),
        &pick(NSGA2, |s| s.distinct_critical as f64),
    );
    let early_hv = EarlyHv {
        fraction: early_fraction,
        evaluations: early,
        nsga2_median: base.median_early_hv,
        dt_median: dt.median_early_hv,
    };
    Aggregates { algorithms, distinct_ratio, rank_sum, early_hv }
}

fn indicators_csv(run_id: &str, rows: &[(String, IndicatorSnapshot)]) -> Result<Vec<u8>, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["run_id", "stage", "evaluations", "hv", "gd", "spread", "distinct_critical"])
        .map_err(runtime)?;
    for (stage, s) in rows {
        w.write_record([
            run_id.to_string(),
            stage.clone(),
            s.evaluations.to_string(),
            s.hv.to_string(),
            s.gd.to_string(),
            s.spread.to_string(),
            s.distinct_critical.to_string(),
        ])
        .map_err(runtime)?;
    }
    w.into_inner().map_err(runtime)
}

/// Stage label prefix of the fixed-fraction snapshots in the indicator files.
pub(crate) const PREFIX_STAGE: &str = "prefix-";

fn run_pair(cfg: &ExperimentConfig, repetition: usize, evaluator: &AvpEvaluator) -> Result<[Run; 2], HarnessError> {
    let c = &cfg.compare;
    let seed = cfg.seed_for(repetition);
    let space = evaluator.search_space();

    let start = Instant::now();
    let nsga_id = format!("{NSGA2}-{repetition:03}");
    let mut archive = EvaluationArchive::new(nsga_id.clone());
    let nsga = Nsga2::new(space.clone(), SearchConfig { seed, ..c.nsga2.clone() }).map_err(runtime)?;
    let outcome = nsga.run(evaluator, Vec::new(), &mut archive).map_err(runtime)?;
    let stages = outcome
        .generation_marks
        .iter()
        .enumerate()
        .map(|(g, &evaluations)| StageMark { stage: format!("gen{g}"), evaluations })
        .collect();
    let nsga_run = Run {
        record: record(&nsga_id, NSGA2, repetition, seed, start, false),
        archive,
        stages,
        regions: None,
    };

    let start = Instant::now();
    let dt_id = format!("{NSGA2_DT}-{repetition:03}");
    let out = nsga2_dt(&space, evaluator, &DtConfig { seed, ..c.dt.clone() }, &c.variation).map_err(runtime)?;
    let mut dt_archive = out.archive;
    dt_archive.run_id = dt_id.clone();
    let dt_run = Run {
        record: record(&dt_id, NSGA2_DT, repetition, seed, start, true),
        archive: dt_archive,
        stages: out.stages,
        regions: Some((out.iterations, out.final_regions)),
    };
    Ok([nsga_run, dt_run])
}

fn record(run_id: &str, algorithm: &str, repetition: usize, seed: u64, start: Instant, regions: bool) -> RunRecord {
    RunRecord {
        run_id: run_id.to_string(),
        algorithm: algorithm.to_string(),
        repetition,
        seed,
        archive: PathBuf::from("archives").join(format!("{run_id}.csv")),
        indicators: PathBuf::from("indicators").join(format!("{run_id}.csv")),
        regions: regions.then(|| PathBuf::from("regions").join(format!("{run_id}.json"))),
        wall_time_s: start.elapsed().as_secs_f64(),
        summary: RunSummary { evaluations: 0, critical: 0, distinct_critical: 0, hv: 0.0, gd: 0.0, spread: 0.0, early_hv: 0.0 },
    }
}

#[derive(Serialize)]
struct RegionsFile<'a> {
    iterations: &'a [IterationReport],
    final_regions: &'a [CriticalRegion],
}

/// Runs NSGA-II and NSGAII-DT for every repetition with paired seeds and
/// writes archives, indicator series, plot data, the reference front and
/// `report.json` under `cfg.out`.
pub fn run_compare(cfg: &ExperimentConfig) -> Result<CompareReport, HarnessError> {
    cfg.validate()?;
    let c = &cfg.compare;
    let budget = c.budget();
    let evaluator = AvpEvaluator::new(c.sim.clone(), c.thresholds);
    let pairs: Vec<[Run; 2]> = (0..cfg.repetitions)
        .into_par_iter()
        .map(|r| run_pair(cfg, r, &evaluator))
        .collect::<Result<_, _>>()?;
    let mut runs: Vec<Run> = pairs.into_iter().flatten().collect();

    let reference = reference_of(runs.iter().map(|r| &r.archive))?;
    let early = prefix_len(c.early_fraction, budget);
    let out = &cfg.out;
    for run in &mut runs {
        run.record.summary = summarize(&reference, &run.archive, &c.distinctness, early)?;
        let mut rows = Vec::new();
        for mark in &run.stages {
            rows.push((mark.stage.clone(), snapshot(&reference, &run.archive, mark.evaluations, &c.distinctness)?));
        }
        for &f in &c.snapshot_fractions {
            let n = prefix_len(f, budget);
            let stage = format!("{PREFIX_STAGE}{}", n);
            rows.push((stage, snapshot(&reference, &run.archive, n, &c.distinctness)?));
        }
        let mut buf = Vec::new();
        run.archive.write_csv(&mut buf).map_err(runtime)?;
        write_file(&out.join(&run.record.archive), &buf)?;
        write_file(&out.join(&run.record.indicators), &indicators_csv(&run.record.run_id, &rows)?)?;
        if let (Some(path), Some((iterations, final_regions))) = (&run.record.regions, &run.regions) {
            write_file(&out.join(path), &to_json(&RegionsFile { iterations, final_regions }))?;
        }
    }

    let summaries: Vec<(&str, RunSummary)> =
        runs.iter().map(|r| (r.record.algorithm.as_str(), r.record.summary)).collect();
    let report = CompareReport {
        budget,
        repetitions: cfg.repetitions,
        seed: cfg.seed,
        distinctness: c.distinctness.clone(),
        snapshot_cadence: vec![
            format!("{NSGA2}: stage genN after each generation"),
            format!("{NSGA2_DT}: stage itI-rR-gG after each generation of each region run, initial after the LHS sample"),
            format!("both: stage {PREFIX_STAGE}N scores the first N evaluations of the archive"),
        ],
        seconds_per_simulation: c.seconds_per_simulation,
        estimated_seconds_per_run: budget as f64 * c.seconds_per_simulation,
        aggregates: aggregate(&summaries, c.early_fraction, early),
        runs: runs.into_iter().map(|r| r.record).collect(),
    };
    write_file(&out.join("reference.json"), &to_json(&reference))?;
    write_file(&out.join("config.toml"), cfg.to_toml().as_bytes())?;
    plots::emit_plots(&report.runs, out)?;
    write_file(&out.join("report.json"), &to_json(&report))?;
    Ok(report)
}

fn load_archive(path: &Path) -> Result<EvaluationArchive, HarnessError> {
    let bytes = read_file(path)?;
    EvaluationArchive::read_csv(bytes.as_slice()).map_err(|e| HarnessError::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub runs: Vec<(String, RunSummary)>,
    pub aggregates: Aggregates,
    /// Recomputed values equal the ones in `report.json`.
    pub matches: bool,
}

/// Recomputes every run summary and the aggregates of a finished comparison
/// from its archive files alone and writes `replay.json` next to the report.
pub fn replay(out: &Path) -> Result<ReplayReport, HarnessError> {
    let report_path = out.join("report.json");
    let report: CompareReport = serde_json::from_slice(&read_file(&report_path)?)
        .map_err(|e| HarnessError::io(&report_path, e))?;
    let missing: Vec<PathBuf> =
        report.runs.iter().map(|r| out.join(&r.archive)).filter(|p| !p.exists()).collect();
    if !missing.is_empty() {
        return Err(HarnessError::MissingFiles(missing));
    }
    let archives: Vec<EvaluationArchive> =
        report.runs.iter().map(|r| load_archive(&out.join(&r.archive))).collect::<Result<_, _>>()?;
    let reference = reference_of(archives.iter())?;
    let early = report.aggregates.early_hv.evaluations;
    let mut runs = Vec::new();
    for (rec, archive) in report.runs.iter().zip(&archives) {
        runs.push((rec.run_id.clone(), summarize(&reference, archive, &report.distinctness, early)?));
    }
    let tagged: Vec<(&str, RunSummary)> =
        report.runs.iter().zip(&runs).map(|(rec, (_, s))| (rec.algorithm.as_str(), *s)).collect();
    let aggregates = aggregate(&tagged, report.aggregates.early_hv.fraction, early);
    let matches = aggregates == report.aggregates
        && report.runs.iter().zip(&runs).all(|(rec, (_, s))| rec.summary == *s);
    let replayed = ReplayReport { runs, aggregates, matches };
    write_file(&out.join("replay.json"), &to_json(&replayed))?;
    Ok(replayed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredArchive {
    pub path: PathBuf,
    pub run_id: String,
    pub snapshot: IndicatorSnapshot,
}

/// Scores archive files against the reference front of their union.
pub fn score_archives(paths: &[PathBuf], policy: &DistinctnessPolicy) -> Result<Vec<ScoredArchive>, HarnessError> {
    if paths.is_empty() {
        return Err(HarnessError::Config("no archive files given".into()));
    }
    let missing: Vec<PathBuf> = paths.iter().filter(|p| !p.exists()).cloned().collect();
    if !missing.is_empty() {
        return Err(HarnessError::MissingFiles(missing));
    }
    let archives: Vec<EvaluationArchive> = paths.iter().map(|p| load_archive(p)).collect::<Result<_, _>>()?;
    let reference = reference_of(archives.iter())?;
    paths
        .iter()
        .zip(&archives)
        .map(|(p, a)| {
            Ok(ScoredArchive {
                path: p.clone(),
                run_id: a.run_id.clone(),
                snapshot: snapshot(&reference, a, a.len(), policy)?,
            })
        })
        .collect()
}
