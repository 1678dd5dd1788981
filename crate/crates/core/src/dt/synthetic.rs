use crate::search::{Evaluation, Evaluator, SearchSpace};

/// Synthetic system under test with a known failure box.
///
/// A genome is critical iff it lies in `target`. Objectives are the distance to
/// the target box and the distance to the upper corner of `space`, so the
/// Pareto set runs from the target toward that corner and only part of it is
/// critical.
#[derive(Debug, Clone)]
pub struct BoxTargetEvaluator {
    pub space: SearchSpace,
    pub target: SearchSpace,
}

impl BoxTargetEvaluator {
    pub fn new(space: SearchSpace, target: SearchSpace) -> Self {
        Self { space, target }
    }
}

impl Evaluator for BoxTargetEvaluator {
    fn n_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, genome: &[f64]) -> Result<Evaluation, String> {
        let mut to_box = 0.0;
        let mut to_corner = 0.0;
        for (i, x) in genome.iter().enumerate() {
            let (lo, hi) = self.target.bounds(i);
            let (slo, shi) = self.space.bounds(i);
            let scale = shi - slo;
            let gap = ((lo - x).max(x - hi)).max(0.0) / scale;
            to_box += gap * gap;
            to_corner += ((shi - x) / scale).powi(2);
        }
        Ok(Evaluation {
            objectives: vec![to_box.sqrt(), to_corner.sqrt()],
            critical: self.target.contains(genome),
        })
    }
}
