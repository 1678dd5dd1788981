use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::FalsifyError;
use crate::search::SearchSpace;

/// Result of one surrogate minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    /// Objective calls made, the start point included.
    pub evaluations: usize,
}

/// Derivative-free minimizer over a box, used on the surrogate.
pub trait SurrogateOptimizer: Sync {
    /// Minimizes `f` with at most `max_evaluations` calls. `start` is the
    /// first point tried when given.
    fn minimize(
        &self,
        f: &mut dyn FnMut(&[f64]) -> Result<f64, FalsifyError>,
        space: &SearchSpace,
        start: Option<&[f64]>,
        max_evaluations: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Minimum, FalsifyError>;
}

/// Simulated annealing with geometric cooling and Gaussian moves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealingConfig {
    pub initial_temperature: f64,
    /// Temperature multiplier per proposal.
    pub cooling: f64,
    /// Proposal standard deviation as a fraction of each variable's range.
    pub step: f64,
}

impl Default for AnnealingConfig {
    fn default() -> Self {
        Self { initial_temperature: 0.5, cooling: 0.98, step: 0.2 }
    }
}

impl AnnealingConfig {
    pub fn validate(&self) -> Result<(), FalsifyError> {
        let ok = self.initial_temperature.is_finite()
            && self.initial_temperature >= 0.0
            && self.cooling > 0.0
            && self.cooling <= 1.0
            && self.step.is_finite()
            && self.step > 0.0;
        if ok {
            Ok(())
        } else {
            Err(FalsifyError::InvalidConfig(format!("invalid annealing settings {self:?}")))
        }
    }
}

impl SurrogateOptimizer for AnnealingConfig {
    fn minimize(
        &self,
        f: &mut dyn FnMut(&[f64]) -> Result<f64, FalsifyError>,
        space: &SearchSpace,
        start: Option<&[f64]>,
        max_evaluations: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Minimum, FalsifyError> {
        if max_evaluations == 0 {
            return Err(FalsifyError::InvalidConfig("annealing needs at least one evaluation".into()));
        }
        let mut current = match start {
            Some(p) => {
                let mut p = p.to_vec();
                space.clamp(&mut p);
                p
            }
            None => space.sample_uniform(rng),
        };
        let mut current_value = f(&current)?;
        let mut best = Minimum { point: current.clone(), value: current_value, evaluations: 1 };
        let mut temperature = self.initial_temperature;
        let unit = Normal::new(0.0, 1.0).expect("unit normal");
        while best.evaluations < max_evaluations {
            let proposal: Vec<f64> = (0..space.dim())
                .map(|i| {
                    let (lo, hi) = space.bounds(i);
                    (current[i] + unit.sample(rng) * self.step * (hi - lo)).clamp(lo, hi)
                })
                .collect();
            let value = f(&proposal)?;
            best.evaluations += 1;
            let accept = value <= current_value
                || (temperature > 0.0 && rng.gen::<f64>() < ((current_value - value) / temperature).exp());
            if accept {
                current = proposal;
                current_value = value;
                if value < best.value {
                    best.point = current.clone();
                    best.value = value;
                }
            }
            temperature *= self.cooling;
        }
        Ok(best)
    }
}
