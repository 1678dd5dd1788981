//! Real-vector multi-objective evolutionary search.
//!
//! NSGA-II with Latin Hypercube initialization over any bounded box. All objectives
//! are minimized; callers negate objectives they want to maximize.

mod archive;
mod lhs;
mod nsga2;
mod operators;
mod sorting;
mod space;

pub use archive::{ArchiveRow, EvaluationArchive};
pub use lhs::lhs_sample;
pub use nsga2::{evaluate_all, evolve, Nsga2, RunOutcome, Seed};
pub use operators::{polynomial_mutation, sbx_crossover};
pub use sorting::{crowding_distance, dominates, non_dominated_sort};
pub use space::SearchSpace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error("genome {genome:?} lies outside the search space")]
    OutOfBounds { genome: Vec<f64> },
    #[error("evaluation of genome {genome:?} failed: {reason}")]
    Evaluation { genome: Vec<f64>, reason: String },
}

/// Result of running the system under test on one genome.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Minimization-oriented objective values.
    pub objectives: Vec<f64>,
    pub critical: bool,
}

/// Maps a genome to objectives. Implementations must be pure: the same genome
/// always yields the same evaluation.
pub trait Evaluator: Sync {
    fn n_objectives(&self) -> usize;
    fn evaluate(&self, genome: &[f64]) -> Result<Evaluation, String>;
}

impl<F> Evaluator for (usize, F)
where
    F: Fn(&[f64]) -> Evaluation + Sync,
{
    fn n_objectives(&self) -> usize {
        self.0
    }

    fn evaluate(&self, genome: &[f64]) -> Result<Evaluation, String> {
        Ok((self.1)(genome))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub population: usize,
    pub generations: usize,
    pub crossover_probability: f64,
    /// Per-gene mutation probability; `None` means `1/n`.
    pub mutation_probability: Option<f64>,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
    pub tournament_size: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            population: 40,
            generations: 24,
            crossover_probability: 0.6,
            mutation_probability: None,
            sbx_eta: 15.0,
            mutation_eta: 20.0,
            tournament_size: 2,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.population < 4 || self.population % 2 != 0 {
            return Err(SearchError::InvalidConfig(format!(
                "population must be even and >= 4, got {}",
                self.population
            )));
        }
        let pc = self.crossover_probability;
        if !(0.0..=1.0).contains(&pc) {
            return Err(SearchError::InvalidConfig(format!(
                "crossover probability {pc} not in [0,1]"
            )));
        }
        if let Some(pm) = self.mutation_probability {
            if !(0.0..=1.0).contains(&pm) {
                return Err(SearchError::InvalidConfig(format!(
                    "mutation probability {pm} not in [0,1]"
                )));
            }
        }
        if self.tournament_size < 1 {
            return Err(SearchError::InvalidConfig("tournament size must be >= 1".into()));
        }
        if !(self.sbx_eta >= 0.0 && self.mutation_eta >= 0.0) {
            return Err(SearchError::InvalidConfig(
                "distribution indices must be non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn mutation_probability_for(&self, n: usize) -> f64 {
        self.mutation_probability.unwrap_or(1.0 / n as f64)
    }
}

/// A member of the evolving population.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Vec<f64>,
    pub objectives: Vec<f64>,
    pub critical: bool,
    /// Non-dominated front index, 0 is best.
    pub rank: usize,
    pub crowding: f64,
    /// Global evaluation index of the archive row that produced this individual.
    pub eval_index: u64,
}
