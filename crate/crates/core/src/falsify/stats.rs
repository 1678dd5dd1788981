use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FalsifyError;

/// Falsification rate and cost over a batch of trials. `mean` and `median`
/// count real simulations over successful trials only and are `None` when no
/// trial succeeded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsificationStats {
    pub trials: usize,
    pub fr: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
}

/// `outcomes[i]` is the simulation count of a successful trial, `None` for a failed one.
pub fn falsification_stats(outcomes: &[Option<usize>]) -> FalsificationStats {
    let mut hits: Vec<usize> = outcomes.iter().flatten().copied().collect();
    hits.sort_unstable();
    let n = hits.len();
    let (mean, median) = if n == 0 {
        (None, None)
    } else {
        let mean = hits.iter().sum::<usize>() as f64 / n as f64;
        let median = if n % 2 == 1 { hits[n / 2] as f64 } else { (hits[n / 2 - 1] + hits[n / 2]) as f64 / 2.0 };
        (Some(mean), Some(median))
    };
    FalsificationStats { trials: outcomes.len(), fr: n, mean, median }
}

/// One line of the report table: `requirement,FR,mean,median`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub requirement: String,
    pub fr: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
}

pub const STATS_HEADER: &str = "requirement,FR,mean,median";

impl StatsRow {
    pub fn new(requirement: impl Into<String>, stats: &FalsificationStats) -> Self {
        Self { requirement: requirement.into(), fr: stats.fr, mean: stats.mean, median: stats.median }
    }
}

fn parse_cell(s: &str) -> Result<Option<f64>, FalsifyError> {
    match s.trim() {
        "-" | "\u{2013}" => Ok(None),
        t => t.parse().map(Some).map_err(|_| FalsifyError::InvalidData(format!("bad stats cell '{t}'"))),
    }
}

fn format_median(m: f64) -> String {
    if m.fract() == 0.0 {
        format!("{m:.0}")
    } else {
        format!("{m:.1}")
    }
}

/// Mean with one decimal, median as an integer when whole, `-` when undefined.
impl fmt::Display for StatsRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mean = self.mean.map_or("-".to_string(), |m| format!("{m:.1}"));
        let median = self.median.map_or("-".to_string(), format_median);
        write!(f, "{},{},{mean},{median}", self.requirement, self.fr)
    }
}

impl FromStr for StatsRow {
    type Err = FalsifyError;

    /// Accepts `-` or an en dash for undefined cells.
    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let cells: Vec<&str> = line.trim_end().rsplitn(4, ',').collect();
        let [median, mean, fr, requirement] = cells[..] else {
            return Err(FalsifyError::InvalidData(format!("expected 4 cells in '{line}'")));
        };
        let fr = fr.trim().parse().map_err(|_| FalsifyError::InvalidData(format!("bad FR '{fr}'")))?;
        Ok(Self { requirement: requirement.to_string(), fr, mean: parse_cell(mean)?, median: parse_cell(median)? })
    }
}
