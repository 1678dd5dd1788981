use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use super::SimError;
use crate::search::SearchSpace;

/// One test input: ego speed, pedestrian speed, pedestrian start delay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioInput {
    /// m/s
    pub v0c: f64,
    /// m/s
    pub v0p: f64,
    /// s
    pub t_wait: f64,
}

impl ScenarioInput {
    pub fn new(v0c: f64, v0p: f64, t_wait: f64) -> Self {
        Self { v0c, v0p, t_wait }
    }

    pub fn from_genome(genome: &[f64]) -> Self {
        Self { v0c: genome[0], v0p: genome[1], t_wait: genome[2] }
    }

    pub fn to_genome(self) -> Vec<f64> {
        vec![self.v0c, self.v0p, self.t_wait]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputBounds {
    pub v0c: (f64, f64),
    pub v0p: (f64, f64),
    pub t_wait: (f64, f64),
}

impl Default for InputBounds {
    fn default() -> Self {
        Self { v0c: (1.0, 12.0), v0p: (0.5, 3.0), t_wait: (0.0, 8.0) }
    }
}

impl InputBounds {
    pub fn check(&self, input: &ScenarioInput) -> Result<(), SimError> {
        let fields = [
            ("v0c", input.v0c, self.v0c),
            ("v0p", input.v0p, self.v0p),
            ("t_wait", input.t_wait, self.t_wait),
        ];
        for (field, value, (lower, upper)) in fields {
            if !(lower..=upper).contains(&value) {
                return Err(SimError::OutOfBounds { field, value, lower, upper });
            }
        }
        Ok(())
    }

    pub fn search_space(&self) -> SearchSpace {
        SearchSpace::from_bounds(&[self.v0c, self.v0p, self.t_wait])
            .expect("bounds validated by SimConfig::validate")
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// s
    pub dt: f64,
    /// s
    pub horizon: f64,
    pub ego_length: f64,
    pub ego_width: f64,
    /// Longitudinal position of the parking spot, m.
    pub parking_x: f64,
    /// Parked vehicle hiding the pedestrian.
    pub occluder: Rect,
    pub pedestrian_start: (f64, f64),
    pub sensor_range: f64,
    /// rad
    pub sensor_half_angle: f64,
    /// m/s²
    pub max_brake: f64,
    /// m/s²
    pub comfort_decel: f64,
    /// Half-width of the lateral band in which a pedestrian is a threat, m.
    pub corridor_half_width: f64,
    /// Extra distance added to the braking distance before emergency braking, m.
    pub brake_margin: f64,
    pub bounds: InputBounds,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            horizon: 10.0,
            ego_length: 4.5,
            ego_width: 1.8,
            parking_x: 60.0,
            occluder: Rect { x_min: 20.0, y_min: 1.5, x_max: 29.5, y_max: 6.0 },
            pedestrian_start: (30.0, 5.0),
            sensor_range: 20.0,
            sensor_half_angle: FRAC_PI_4,
            max_brake: 6.0,
            comfort_decel: 2.0,
            corridor_half_width: 2.0,
            brake_margin: 1.0,
            bounds: InputBounds::default(),
        }
    }
}

impl SimConfig {
    /// Number of integration steps; the trace has one more sample.
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: String| Err(SimError::InvalidConfig(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad(format!("horizon must be positive, got {}", self.horizon));
        }
        let ratio = self.horizon / self.dt;
        if (ratio - ratio.round()).abs() > 1e-6 {
            return bad(format!(
                "horizon {} is not an integer number of {}-s steps",
                self.horizon, self.dt
            ));
        }
        let positive = [
            ("ego_length", self.ego_length),
            ("ego_width", self.ego_width),
            ("sensor_range", self.sensor_range),
            ("sensor_half_angle", self.sensor_half_angle),
            ("max_brake", self.max_brake),
            ("comfort_decel", self.comfort_decel),
            ("corridor_half_width", self.corridor_half_width),
            ("occluder width", self.occluder.x_max - self.occluder.x_min),
            ("occluder depth", self.occluder.y_max - self.occluder.y_min),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.brake_margin >= 0.0) {
            return bad(format!("brake_margin must be non-negative, got {}", self.brake_margin));
        }
        for (name, (lo, hi)) in
            [("v0c", self.bounds.v0c), ("v0p", self.bounds.v0p), ("t_wait", self.bounds.t_wait)]
        {
            if !(lo.is_finite() && hi.is_finite() && lo < hi && lo >= 0.0) {
                return bad(format!("bounds for {name} must satisfy 0 <= lower < upper"));
            }
        }
        Ok(())
    }
}

/// Failure thresholds on the two fitness values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// Critical when the minimum distance is at most this, m.
    pub distance: f64,
    /// Critical when the speed at closest approach is at least this, m/s.
    pub speed: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { distance: 0.2, speed: 1.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SimConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.steps(), 1000);
    }

    #[test]
    fn rejects_fractional_step_count() {
        let cfg = SimConfig { horizon: 10.005, dt: 0.01, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = SimConfig { ego_width: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn bounds_error_names_field() {
        let err = InputBounds::default().check(&ScenarioInput::new(5.0, 3.5, 1.0)).unwrap_err();
        assert!(matches!(err, SimError::OutOfBounds { field: "v0p", .. }));
        assert!(err.to_string().contains("v0p"));
    }
}
