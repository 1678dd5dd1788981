//! Deterministic 2D kinematic simulator of an automated valet parking scenario.
//!
//! The ego car drives along +x from the origin toward a parking spot. A
//! pedestrian waits behind a parked vehicle (the occluder) and, after `t_wait`
//! seconds, walks across the ego lane toward -y. An emergency-braking function
//! brakes at full deceleration once a visible pedestrian is inside the threat
//! corridor and closer than the braking distance.
//!
//! Coordinates: ego position is the centre of its front bumper, the lane
//! centreline is `y = 0`.

mod config;
mod evaluator;
mod fitness;
mod geometry;
mod simulate;

pub use config::{InputBounds, Rect, ScenarioInput, SimConfig, Thresholds};
pub use evaluator::AvpEvaluator;
pub use fitness::{fitness, FitnessVector};
pub use geometry::{point_segment_distance, segment_intersects_rect};
pub use simulate::{simulate, Sample, SimulationTrace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("input field `{field}` = {value} outside [{lower}, {upper}]")]
    OutOfBounds { field: &'static str, value: f64, lower: f64, upper: f64 },
    #[error("invalid simulator config: {0}")]
    InvalidConfig(String),
    #[error("trace is empty")]
    EmptyTrace,
}
