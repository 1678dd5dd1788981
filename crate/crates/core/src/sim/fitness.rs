use serde::{Deserialize, Serialize};

use super::geometry::point_segment_distance;
use super::{SimConfig, SimError, SimulationTrace, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessVector {
    /// Minimum pedestrian distance to the front bumper, m.
    pub f1: f64,
    /// Ego speed at the sample achieving `f1`, m/s.
    pub f2: f64,
    pub critical: bool,
    /// Sample index achieving `f1` (earliest on ties).
    pub argmin: usize,
}

/// Distance is measured to the front-bumper segment, so a pedestrian reaching
/// the side of the car scores the longitudinal offset rather than zero.
pub fn fitness(
    trace: &SimulationTrace,
    cfg: &SimConfig,
    thresholds: &Thresholds,
) -> Result<FitnessVector, SimError> {
    let half = cfg.ego_width / 2.0;
    let mut best: Option<(usize, f64)> = None;
    for (k, s) in trace.samples.iter().enumerate() {
        let a = (s.ego.0, s.ego.1 - half);
        let b = (s.ego.0, s.ego.1 + half);
        let d = point_segment_distance(s.pedestrian, a, b);
        if best.map_or(true, |(_, bd)| d < bd) {
            best = Some((k, d));
        }
    }
    let (argmin, f1) = best.ok_or(SimError::EmptyTrace)?;
    let f2 = trace.samples[argmin].ego_speed;
    Ok(FitnessVector {
        f1,
        f2,
        critical: f1 <= thresholds.distance && f2 >= thresholds.speed,
        argmin,
    })
}
