use super::{fitness, simulate, ScenarioInput, SimConfig, Thresholds};
use crate::search::{Evaluation, Evaluator, SearchSpace};

/// Adapts the simulator to the search engine: genome `(v0c, v0p, t_wait)`,
/// objectives `(f1, -f2)` (distance minimized, speed maximized).
#[derive(Debug, Clone, Default)]
pub struct AvpEvaluator {
    pub config: SimConfig,
    pub thresholds: Thresholds,
}

impl AvpEvaluator {
    pub fn new(config: SimConfig, thresholds: Thresholds) -> Self {
        Self { config, thresholds }
    }

    pub fn search_space(&self) -> SearchSpace {
        self.config.bounds.search_space()
    }
}

impl Evaluator for AvpEvaluator {
    fn n_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, genome: &[f64]) -> Result<Evaluation, String> {
        if genome.len() != 3 {
            return Err(format!("expected 3 genes, got {}", genome.len()));
        }
        let input = ScenarioInput::from_genome(genome);
        let trace = simulate(&input, &self.config).map_err(|e| e.to_string())?;
        let f = fitness(&trace, &self.config, &self.thresholds).map_err(|e| e.to_string())?;
        Ok(Evaluation { objectives: vec![f.f1, -f.f2], critical: f.critical })
    }
}
