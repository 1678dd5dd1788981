//! Experiment orchestration: config files, repeated runs, persisted archives,
//! indicator time series, reports and replay.
//!
//! Every output file is a pure function of the config, so reruns are
//! byte-identical. Wall-clock times are measured but never written.

mod compare;
mod config;
mod falsify;
mod plots;
mod ranksum;

pub use compare::{
    replay, run_compare, score_archives, Aggregates, AlgorithmSummary, CompareReport, EarlyHv, ReplayReport,
    RunRecord, RunSummary, ScoredArchive, NSGA2, NSGA2_DT,
};
pub use config::{CompareSection, ExperimentConfig, ExperimentKind, FalsifySection};
pub use falsify::{run_falsify, FalsifyReport, TrialRecord, RANDOM, SURROGATE};
pub use plots::{emit_plots, PLOT_HEADER};
pub use ranksum::{rank_sum_test, RankSum};

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("missing run files: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingFiles(Vec<PathBuf>),
    #[error("run failed: {0}")]
    Runtime(String),
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            _ => 3,
        }
    }

    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        HarnessError::Io { path: path.to_path_buf(), message: e.to_string() }
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>, HarnessError> {
    std::fs::read(path).map_err(|e| HarnessError::io(path, e))
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("report types serialize");
    s.push(b'\n');
    s
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
