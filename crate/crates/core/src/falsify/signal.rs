use serde::{Deserialize, Serialize};

use super::FalsifyError;
use crate::search::SearchSpace;

/// Uniformly sampled multichannel signal. `values[k]` holds every channel at
/// time `k * period`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub period: f64,
    pub values: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(period: f64, values: Vec<Vec<f64>>) -> Self {
        Self { period, values }
    }

    /// Single-channel series.
    pub fn scalar(period: f64, values: impl IntoIterator<Item = f64>) -> Self {
        Self { period, values: values.into_iter().map(|v| vec![v]).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn channels(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn channel(&self, c: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[c]).collect()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.period
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalMode {
    /// Control points joined by the chosen interpolation.
    PiecewiseContinuous,
    /// Held levels only: every channel is piecewise constant.
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpolation {
    PiecewiseConstant,
    Linear,
}

/// Maps a control-point vector to a sampled input signal.
///
/// The vector is channel-major: channel `c` owns entries
/// `c * control_points .. (c + 1) * control_points`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignalParam {
    pub mode: SignalMode,
    pub control_points: usize,
    pub interpolation: Interpolation,
    /// Amplitude range per input channel.
    pub bounds: Vec<(f64, f64)>,
    pub horizon: f64,
    pub period: f64,
}

impl Default for SignalParam {
    fn default() -> Self {
        Self {
            mode: SignalMode::PiecewiseContinuous,
            control_points: 5,
            interpolation: Interpolation::PiecewiseConstant,
            bounds: vec![(-1.0, 1.0)],
            horizon: 5.0,
            period: 0.1,
        }
    }
}

impl SignalParam {
    pub fn validate(&self) -> Result<(), FalsifyError> {
        let bad = |m: String| Err(FalsifyError::InvalidConfig(m));
        if self.control_points == 0 {
            return bad("at least one control point is required".into());
        }
        if self.bounds.is_empty() {
            return bad("at least one input channel is required".into());
        }
        for (c, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("channel {c} has invalid bounds [{lo}, {hi}]"));
            }
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return bad(format!("sample period {} must be positive", self.period));
        }
        if !(self.horizon.is_finite() && self.horizon >= 0.0) {
            return bad(format!("horizon {} must be non-negative", self.horizon));
        }
        if self.mode == SignalMode::Constrained && self.interpolation != Interpolation::PiecewiseConstant {
            return bad("constrained signals are piecewise constant".into());
        }
        Ok(())
    }

    pub fn channels(&self) -> usize {
        self.bounds.len()
    }

    /// Length of the control-point vector.
    pub fn dim(&self) -> usize {
        self.control_points * self.channels()
    }

    /// Samples per generated signal, both ends of the horizon included.
    pub fn samples(&self) -> usize {
        (self.horizon / self.period).round() as usize + 1
    }

    pub fn search_space(&self) -> Result<SearchSpace, FalsifyError> {
        let mut lower = Vec::with_capacity(self.dim());
        let mut upper = Vec::with_capacity(self.dim());
        for &(lo, hi) in &self.bounds {
            lower.extend(std::iter::repeat(lo).take(self.control_points));
            upper.extend(std::iter::repeat(hi).take(self.control_points));
        }
        SearchSpace::new(lower, upper).map_err(|e| FalsifyError::InvalidConfig(e.to_string()))
    }

    fn interpolation(&self) -> Interpolation {
        match self.mode {
            SignalMode::Constrained => Interpolation::PiecewiseConstant,
            SignalMode::PiecewiseContinuous => self.interpolation,
        }
    }

    /// Generates the sampled signal. Control points are clamped to the bounds.
    pub fn generate(&self, points: &[f64]) -> Result<TimeSeries, FalsifyError> {
        if points.len() != self.dim() {
            return Err(FalsifyError::InvalidConfig(format!(
                "expected {} control points, got {}",
                self.dim(),
                points.len()
            )));
        }
        let n = self.samples();
        let cp = self.control_points;
        let interp = self.interpolation();
        let values = (0..n)
            .map(|k| {
                let t = k as f64 * self.period;
                let s = if self.horizon > 0.0 { (t / self.horizon).min(1.0) } else { 0.0 };
                self.bounds
                    .iter()
                    .enumerate()
                    .map(|(c, &(lo, hi))| {
                        let p = &points[c * cp..(c + 1) * cp];
                        let v = match interp {
                            Interpolation::PiecewiseConstant => p[((s * cp as f64) as usize).min(cp - 1)],
                            Interpolation::Linear if cp == 1 => p[0],
                            Interpolation::Linear => {
                                let x = s * (cp - 1) as f64;
                                let j = (x as usize).min(cp - 2);
                                let w = x - j as f64;
                                p[j] * (1.0 - w) + p[j + 1] * w
                            }
                        };
                        v.clamp(lo, hi)
                    })
                    .collect()
            })
            .collect();
        Ok(TimeSeries { period: self.period, values })
    }
}
