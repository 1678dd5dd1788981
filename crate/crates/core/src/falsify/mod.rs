//! Surrogate-assisted falsification of signal requirements.
//!
//! An ARX model is fitted to every executed trace, simulated annealing looks
//! for an input that drives the surrogate's robustness below zero, and the
//! candidate is confirmed on the real system before anything is reported.

mod annealing;
mod arx;
mod benchmark;
mod falsifier;
mod signal;
mod stats;
mod stl;

pub use annealing::{AnnealingConfig, Minimum, SurrogateOptimizer};
pub use arx::{fit_arx, simulate_arx, ArxConfig, ArxModel, ArxOrders};
pub use benchmark::{benchmark_sut, Benchmark, Sut};
pub use falsifier::{falsify, falsify_with, random_search, FalsifyConfig, FalsifyOutcome, RoundLog};
pub use signal::{Interpolation, SignalMode, SignalParam, TimeSeries};
pub use stats::{falsification_stats, FalsificationStats, StatsRow, STATS_HEADER};
pub use stl::Requirement;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FalsifyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("{rows} regression rows for {coefficients} coefficients")]
    TooFewRows { rows: usize, coefficients: usize },
    #[error("requirement: {0}")]
    Requirement(String),
    #[error("trace too short: formula needs {needed} samples, trace has {available}")]
    Horizon { needed: usize, available: usize },
    #[error("unknown benchmark '{0}'")]
    UnknownBenchmark(String),
    #[error("simulation failed: {0}")]
    Simulation(String),
}
