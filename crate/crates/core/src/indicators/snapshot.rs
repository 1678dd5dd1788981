use serde::{Deserialize, Serialize};

use super::{
    distinct_critical, generational_distance, hypervolume, non_dominated_filter, normalize, spread,
    DistinctnessPolicy, IndicatorError,
};

/// Shared yardstick for comparing runs: the non-dominated union of every
/// compared run, the per-objective normalization bounds it spans, and its two
/// extreme members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSet {
    pub front: Vec<Vec<f64>>,
    pub bounds: Vec<(f64, f64)>,
    /// HV reference point in normalized space.
    pub hv_reference: Vec<f64>,
}

/// Indicator values for one run at one point in its evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorSnapshot {
    pub evaluations: usize,
    pub hv: f64,
    pub gd: f64,
    pub spread: f64,
    pub distinct_critical: usize,
}

impl ReferenceSet {
    pub const HV_REFERENCE: f64 = 1.01;

    pub fn from_points<'a, I>(points: I) -> Result<Self, IndicatorError>
    where
        I: IntoIterator<Item = &'a Vec<f64>>,
    {
        let all: Vec<Vec<f64>> = points.into_iter().cloned().collect();
        if all.is_empty() {
            return Err(IndicatorError::Empty);
        }
        let m = all[0].len();
        super::check_points(&all, m)?;
        let front = non_dominated_filter(&all);
        let bounds = (0..m)
            .map(|k| {
                let lo = front.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
                let hi = front.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
                if hi > lo {
                    (lo, hi)
                } else {
                    (lo, lo + 1.0)
                }
            })
            .collect();
        Ok(Self { front, bounds, hv_reference: vec![Self::HV_REFERENCE; m] })
    }

    pub fn normalized_front(&self) -> Vec<Vec<f64>> {
        normalize(&self.front, &self.bounds).expect("bounds have positive range")
    }

    /// Boundary members of the normalized reference front (bi-objective).
    pub fn extremes(&self) -> [Vec<f64>; 2] {
        let mut f = self.normalized_front();
        f.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
        [f[0].clone(), f[f.len() - 1].clone()]
    }

    /// Scores the non-dominated subset of `objectives`.
    pub fn snapshot(
        &self,
        objectives: &[Vec<f64>],
        critical_genomes: &[Vec<f64>],
        policy: &DistinctnessPolicy,
    ) -> Result<IndicatorSnapshot, IndicatorError> {
        let front = normalize(&non_dominated_filter(objectives), &self.bounds)?;
        let hv = hypervolume(&front, &self.hv_reference)?;
        let gd = generational_distance(&front, &self.normalized_front())?;
        let spread = if front[0].len() == 2 {
            let [a, b] = self.extremes();
            spread(&front, [&a, &b])?
        } else {
            f64::NAN
        };
        Ok(IndicatorSnapshot {
            evaluations: objectives.len(),
            hv,
            gd,
            spread,
            distinct_critical: distinct_critical(critical_genomes, policy),
        })
    }
}
