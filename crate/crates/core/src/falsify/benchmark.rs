use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FalsifyError, TimeSeries};

/// A system under test: maps an input signal to an output signal of the same length.
pub trait Sut: Sync {
    fn simulate(&self, input: &TimeSeries) -> Result<TimeSeries, FalsifyError>;
}

impl<F> Sut for F
where
    F: Fn(&TimeSeries) -> Result<TimeSeries, FalsifyError> + Sync,
{
    fn simulate(&self, input: &TimeSeries) -> Result<TimeSeries, FalsifyError> {
        self(input)
    }
}

/// Built-in discrete-time systems, both single input, single output, starting at rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Benchmark {
    /// `y[k] = 0.5 y[k-1] + 0.2 y[k-2] + u[k-1] + 0.3 u[k-2]`.
    Lti2,
    /// Draining tank `x[k+1] = x[k] + dt (u[k] - c sqrt(max(x[k], 0)))`,
    /// output `x`, `dt` the input sample period.
    Tank {
        #[serde(default = "Benchmark::default_outflow")]
        outflow: f64,
    },
}

impl Benchmark {
    fn default_outflow() -> f64 {
        1.0
    }

    pub fn tank() -> Self {
        Benchmark::Tank { outflow: Self::default_outflow() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Benchmark::Lti2 => "lti2",
            Benchmark::Tank { .. } => "tank",
        }
    }
}

impl FromStr for Benchmark {
    type Err = FalsifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lti2" => Ok(Benchmark::Lti2),
            "tank" => Ok(Benchmark::tank()),
            other => Err(FalsifyError::UnknownBenchmark(other.to_string())),
        }
    }
}

/// Runs the named benchmark on `input`.
pub fn benchmark_sut(name: &str, input: &TimeSeries) -> Result<TimeSeries, FalsifyError> {
    name.parse::<Benchmark>()?.simulate(input)
}

impl Sut for Benchmark {
    fn simulate(&self, input: &TimeSeries) -> Result<TimeSeries, FalsifyError> {
        if input.values.iter().any(|v| v.len() != 1) {
            return Err(FalsifyError::InvalidData(format!("{} takes exactly one input channel", self.name())));
        }
        let u: Vec<f64> = input.channel(0);
        let n = u.len();
        let mut y = vec![0.0; n];
        match *self {
            Benchmark::Lti2 => {
                let at = |s: &[f64], k: usize, lag: usize| if lag <= k { s[k - lag] } else { 0.0 };
                for k in 0..n {
                    y[k] = 0.5 * at(&y, k, 1) + 0.2 * at(&y, k, 2) + at(&u, k, 1) + 0.3 * at(&u, k, 2);
                }
            }
            Benchmark::Tank { outflow } => {
                for k in 1..n {
                    let x = y[k - 1];
                    y[k] = x + input.period * (u[k - 1] - outflow * x.max(0.0).sqrt());
                }
            }
        }
        Ok(TimeSeries::scalar(input.period, y))
    }
}
