use std::io::Write;

use super::geometry::segment_intersects_rect;
use super::{ScenarioInput, SimConfig, SimError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub ego: (f64, f64),
    pub ego_speed: f64,
    pub pedestrian: (f64, f64),
    pub detected: bool,
}

/// Time-indexed execution record, `steps + 1` samples starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub samples: Vec<Sample>,
}

impl SimulationTrace {
    /// CSV with header `t,ego_x,ego_y,ego_v,ped_x,ped_y,detected`; `detected` is 0/1.
    pub fn write_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "ego_x", "ego_y", "ego_v", "ped_x", "ped_y", "detected"])?;
        for s in &self.samples {
            w.write_record([
                s.t.to_string(),
                s.ego.0.to_string(),
                s.ego.1.to_string(),
                s.ego_speed.to_string(),
                s.pedestrian.0.to_string(),
                s.pedestrian.1.to_string(),
                u8::from(s.detected).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Mode {
    Cruise,
    Parking,
    EmergencyBrake,
}

pub(crate) fn pedestrian_position(input: &ScenarioInput, cfg: &SimConfig, t: f64) -> (f64, f64) {
    let (x0, y0) = cfg.pedestrian_start;
    (x0, y0 - input.v0p * (t - input.t_wait).max(0.0))
}

/// Whether the ego's sensor at `ego` sees the pedestrian at `ped`.
pub(crate) fn detects(ego: (f64, f64), ped: (f64, f64), cfg: &SimConfig) -> bool {
    let (dx, dy) = (ped.0 - ego.0, ped.1 - ego.1);
    let range = (dx * dx + dy * dy).sqrt();
    range <= cfg.sensor_range
        && dy.atan2(dx).abs() <= cfg.sensor_half_angle
        && !segment_intersects_rect(ego, ped, &cfg.occluder)
}

/// Runs the scenario for the full horizon.
///
/// Each step integrates constant acceleration exactly; a step that would
/// reverse the car ends it at the stopping point instead. Emergency braking and
/// the parking manoeuvre both latch until standstill.
pub fn simulate(input: &ScenarioInput, cfg: &SimConfig) -> Result<SimulationTrace, SimError> {
    cfg.validate()?;
    cfg.bounds.check(input)?;
    let steps = cfg.steps();
    let mut samples = Vec::with_capacity(steps + 1);
    let (mut x, mut v) = (0.0f64, input.v0c);
    let mut mode = Mode::Cruise;
    for k in 0..=steps {
        let t = k as f64 * cfg.dt;
        let ped = pedestrian_position(input, cfg, t);
        let ego = (x, 0.0);
        let detected = detects(ego, ped, cfg);
        samples.push(Sample { t, ego, ego_speed: v, pedestrian: ped, detected });
        if k == steps {
            break;
        }

        if mode != Mode::EmergencyBrake && v > 0.0 && detected {
            let gap = ped.0 - x;
            let braking = v * v / (2.0 * cfg.max_brake) + cfg.brake_margin;
            if ped.1.abs() <= cfg.corridor_half_width && gap > 0.0 && gap < braking {
                mode = Mode::EmergencyBrake;
            }
        }
        if mode == Mode::Cruise && v > 0.0 && cfg.parking_x - x <= v * v / (2.0 * cfg.comfort_decel) {
            mode = Mode::Parking;
        }
        let accel = match mode {
            Mode::Cruise => 0.0,
            Mode::Parking => -cfg.comfort_decel,
            Mode::EmergencyBrake => -cfg.max_brake,
        };
        if v + accel * cfg.dt <= 0.0 {
            if v > 0.0 {
                x += v * v / (2.0 * -accel);
            }
            v = 0.0;
        } else {
            x += v * cfg.dt + 0.5 * accel * cfg.dt * cfg.dt;
            v += accel * cfg.dt;
        }
    }
    Ok(SimulationTrace { samples })
}
