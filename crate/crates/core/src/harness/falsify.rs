use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{to_json, write_file, ExperimentConfig, HarnessError};
use crate::falsify::{falsification_stats, falsify, random_search, FalsificationStats, FalsifyOutcome, StatsRow, STATS_HEADER};

pub const SURROGATE: &str = "surrogate";
pub const RANDOM: &str = "random";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub method: String,
    pub trial: usize,
    pub seed: u64,
    pub falsified: bool,
    pub simulations: usize,
    pub best_robustness: f64,
    pub input: Option<Vec<f64>>,
    pub log: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub benchmark: String,
    pub label: String,
    pub requirement: String,
    pub budget: usize,
    pub surrogate: FalsificationStats,
    pub random: Option<FalsificationStats>,
    pub trials: Vec<TrialRecord>,
}

impl FalsifyReport {
    /// Simulation counts per trial, `None` for unsuccessful ones.
    pub fn outcomes(&self, method: &str) -> Vec<Option<usize>> {
        self.trials
            .iter()
            .filter(|t| t.method == method)
            .map(|t| t.falsified.then_some(t.simulations))
            .collect()
    }
}

fn trial_record(method: &str, trial: usize, seed: u64, o: &FalsifyOutcome) -> TrialRecord {
    TrialRecord {
        method: method.to_string(),
        trial,
        seed,
        falsified: o.falsified,
        simulations: o.simulations,
        best_robustness: o.best_robustness,
        input: o.input.clone(),
        log: PathBuf::from("trials").join(format!("{method}-{trial:03}.jsonl")),
    }
}

/// Runs `repetitions` independent falsification trials (and, when enabled,
/// the random-sampling baseline with the same seeds and budget), then writes
/// `stats.csv`, per-trial JSONL logs and `report.json` under `cfg.out`.
pub fn run_falsify(cfg: &ExperimentConfig) -> Result<FalsifyReport, HarnessError> {
    cfg.validate()?;
    let f = &cfg.falsify;
    let run = |i: usize| -> Result<Vec<(TrialRecord, FalsifyOutcome)>, HarnessError> {
        let seed = cfg.seed_for(i);
        let fail = |e: crate::falsify::FalsifyError| HarnessError::Runtime(format!("trial {i}: {e}"));
        let o = falsify(&f.benchmark, &f.requirement, &f.signal, &f.search, seed).map_err(fail)?;
        let mut out = vec![(trial_record(SURROGATE, i, seed, &o), o)];
        if f.baseline {
            let b = random_search(&f.benchmark, &f.requirement, &f.signal, f.search.budget, seed).map_err(fail)?;
            out.push((trial_record(RANDOM, i, seed, &b), b));
        }
        Ok(out)
    };
    let results: Vec<Vec<(TrialRecord, FalsifyOutcome)>> =
        (0..cfg.repetitions).into_par_iter().map(run).collect::<Result<_, _>>()?;
    let mut trials: Vec<(TrialRecord, FalsifyOutcome)> = results.into_iter().flatten().collect();
    trials.sort_by(|a, b| (a.0.method.as_str(), a.0.trial).cmp(&(b.0.method.as_str(), b.0.trial)));

    for (rec, outcome) in &trials {
        let mut buf = Vec::new();
        outcome.write_jsonl(&mut buf).map_err(|e| HarnessError::io(&rec.log, e))?;
        write_file(&cfg.out.join(&rec.log), &buf)?;
    }
    let stats_of = |method: &str| {
        let outcomes: Vec<Option<usize>> = trials
            .iter()
            .filter(|(r, _)| r.method == method)
            .map(|(r, _)| r.falsified.then_some(r.simulations))
            .collect();
        falsification_stats(&outcomes)
    };
    let surrogate = stats_of(SURROGATE);
    let random = f.baseline.then(|| stats_of(RANDOM));

    let mut table = format!("{STATS_HEADER}\n{}\n", StatsRow::new(f.label.clone(), &surrogate));
    if let Some(r) = &random {
        table.push_str(&format!("{}\n", StatsRow::new(format!("{}-{RANDOM}", f.label), r)));
    }
    write_file(&cfg.out.join("stats.csv"), table.as_bytes())?;

    let report = FalsifyReport {
        benchmark: f.benchmark.name().to_string(),
        label: f.label.clone(),
        requirement: f.requirement.to_string(),
        budget: f.search.budget,
        surrogate,
        random,
        trials: trials.into_iter().map(|(r, _)| r).collect(),
    };
    write_file(&cfg.out.join("config.toml"), cfg.to_toml().as_bytes())?;
    write_file(&cfg.out.join("report.json"), &to_json(&report))?;
    Ok(report)
}
