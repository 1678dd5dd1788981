use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{fit_arx, simulate_arx, AnnealingConfig, ArxConfig, FalsifyError, Requirement, SignalParam, Sut, SurrogateOptimizer, TimeSeries};
use crate::search::lhs_sample;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FalsifyConfig {
    /// Real simulations per trial, initial samples included.
    pub budget: usize,
    /// Surrogate simulations per refinement round.
    pub surrogate_budget: usize,
    /// Latin-hypercube inputs run before the first fit.
    pub initial_samples: usize,
    pub arx: ArxConfig,
    pub annealing: AnnealingConfig,
}

impl Default for FalsifyConfig {
    fn default() -> Self {
        Self {
            budget: 300,
            surrogate_budget: 300,
            initial_samples: 2,
            arx: ArxConfig::default(),
            annealing: AnnealingConfig::default(),
        }
    }
}

impl FalsifyConfig {
    pub fn validate(&self) -> Result<(), FalsifyError> {
        if self.budget == 0 || self.surrogate_budget == 0 || self.initial_samples == 0 {
            return Err(FalsifyError::InvalidConfig(
                "budgets and the initial sample size must be at least 1".into(),
            ));
        }
        self.annealing.validate()
    }
}

/// One real simulation. Round 0 holds the initial samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundLog {
    pub round: usize,
    pub simulations: usize,
    pub surrogate_residual: Option<f64>,
    pub surrogate_robustness: Option<f64>,
    pub real_robustness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyOutcome {
    pub falsified: bool,
    /// Real simulations spent.
    pub simulations: usize,
    /// Control points of the confirmed counterexample.
    pub input: Option<Vec<f64>>,
    /// Lowest real robustness seen.
    pub best_robustness: f64,
    pub rounds: Vec<RoundLog>,
}

impl FalsifyOutcome {
    fn new() -> Self {
        Self { falsified: false, simulations: 0, input: None, best_robustness: f64::INFINITY, rounds: Vec::new() }
    }

    /// Records a real simulation; true when it falsified the requirement.
    fn record(&mut self, log: RoundLog, point: &[f64]) -> bool {
        self.simulations = log.simulations;
        self.best_robustness = self.best_robustness.min(log.real_robustness);
        let hit = log.real_robustness < 0.0;
        if hit {
            self.falsified = true;
            self.input = Some(point.to_vec());
        }
        self.rounds.push(log);
        hit
    }

    /// One JSON object per real simulation.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for r in &self.rounds {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn run_real(
    sut: &dyn Sut,
    requirement: &Requirement,
    signal: &SignalParam,
    point: &[f64],
) -> Result<(TimeSeries, TimeSeries, f64), FalsifyError> {
    let input = signal.generate(point)?;
    let output = sut.simulate(&input)?;
    if output.len() != input.len() {
        return Err(FalsifyError::Simulation(format!(
            "system returned {} samples for {} inputs",
            output.len(),
            input.len()
        )));
    }
    let rob = requirement.robustness(&output)?;
    if rob.is_nan() {
        return Err(FalsifyError::Simulation("robustness is NaN".into()));
    }
    Ok((input, output, rob))
}

fn check(requirement: &Requirement, signal: &SignalParam) -> Result<(), FalsifyError> {
    signal.validate()?;
    requirement.validate_for(signal.horizon)
}

/// Approximation-refinement falsification with the configured annealing optimizer.
pub fn falsify(
    sut: &dyn Sut,
    requirement: &Requirement,
    signal: &SignalParam,
    cfg: &FalsifyConfig,
    seed: u64,
) -> Result<FalsifyOutcome, FalsifyError> {
    falsify_with(sut, requirement, signal, cfg, &cfg.annealing, seed)
}

/// Approximation-refinement falsification.
///
/// Runs the initial sample on the real system, then repeatedly fits an ARX
/// surrogate to every trace so far, minimizes the surrogate's robustness and
/// confirms the minimizer on the real system. Each real run is checked as soon
/// as it completes; the trial stops at the first negative real robustness or
/// when the real budget is spent.
pub fn falsify_with(
    sut: &dyn Sut,
    requirement: &Requirement,
    signal: &SignalParam,
    cfg: &FalsifyConfig,
    optimizer: &dyn SurrogateOptimizer,
    seed: u64,
) -> Result<FalsifyOutcome, FalsifyError> {
    cfg.validate()?;
    check(requirement, signal)?;
    let space = signal.search_space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = FalsifyOutcome::new();
    let mut data = Vec::new();
    for point in lhs_sample(&space, cfg.initial_samples.min(cfg.budget), &mut rng) {
        let (input, output, rob) = run_real(sut, requirement, signal, &point)?;
        let log = RoundLog {
            round: 0,
            simulations: out.simulations + 1,
            surrogate_residual: None,
            surrogate_robustness: None,
            real_robustness: rob,
        };
        if out.record(log, &point) {
            return Ok(out);
        }
        data.push((input, output));
    }
    let mut round = 0;
    while out.simulations < cfg.budget {
        round += 1;
        // Until the traces hold enough regression rows the round samples at random.
        let (point, residual, predicted) = match fit_arx(&data, &cfg.arx) {
            Ok(model) => {
                let mut objective = |x: &[f64]| -> Result<f64, FalsifyError> {
                    let predicted = simulate_arx(&model, &signal.generate(x)?)?;
                    let r = requirement.robustness(&predicted)?;
                    Ok(if r.is_nan() { f64::INFINITY } else { r })
                };
                let best = optimizer.minimize(&mut objective, &space, None, cfg.surrogate_budget, &mut rng)?;
                (best.point, Some(model.residual_norm), Some(best.value))
            }
            Err(FalsifyError::TooFewRows { .. }) => (space.sample_uniform(&mut rng), None, None),
            Err(e) => return Err(e),
        };
        let (input, output, rob) = run_real(sut, requirement, signal, &point)?;
        let log = RoundLog {
            round,
            simulations: out.simulations + 1,
            surrogate_residual: residual,
            surrogate_robustness: predicted,
            real_robustness: rob,
        };
        if out.record(log, &point) {
            return Ok(out);
        }
        data.push((input, output));
    }
    Ok(out)
}

/// Baseline: uniformly random control points on the real system until the
/// requirement fails or `budget` simulations are spent.
pub fn random_search(
    sut: &dyn Sut,
    requirement: &Requirement,
    signal: &SignalParam,
    budget: usize,
    seed: u64,
) -> Result<FalsifyOutcome, FalsifyError> {
    if budget == 0 {
        return Err(FalsifyError::InvalidConfig("budget must be at least 1".into()));
    }
    check(requirement, signal)?;
    let space = signal.search_space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = FalsifyOutcome::new();
    while out.simulations < budget {
        let point = space.sample_uniform(&mut rng);
        let (_, _, rob) = run_real(sut, requirement, signal, &point)?;
        let log = RoundLog {
            round: 0,
            simulations: out.simulations + 1,
            surrogate_residual: None,
            surrogate_robustness: None,
            real_robustness: rob,
        };
        if out.record(log, &point) {
            break;
        }
    }
    Ok(out)
}
