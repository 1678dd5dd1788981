//! Pareto-front quality indicators and effectiveness metrics.
//!
//! All fronts are minimization-oriented lists of objective vectors.

mod distinct;
mod distance;
mod front;
mod hypervolume;
mod snapshot;

pub use distinct::{distinct_critical, DistinctnessPolicy};
pub use distance::{generational_distance, spread};
pub use front::{denormalize, non_dominated_filter, normalize};
pub use hypervolume::hypervolume;
pub use snapshot::{IndicatorSnapshot, ReferenceSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndicatorError {
    #[error("empty point set")]
    Empty,
    #[error("points have mixed dimensions")]
    DimensionMismatch,
    #[error("non-finite objective value")]
    NonFinite,
    #[error("unsupported objective dimension {0}")]
    UnsupportedDimension(usize),
    #[error("point {point:?} lies beyond the reference point")]
    BeyondReference { point: Vec<f64> },
    #[error("objective {0} has zero range")]
    ZeroRange(usize),
}

pub(crate) fn check_points(points: &[Vec<f64>], dim: usize) -> Result<(), IndicatorError> {
    for p in points {
        if p.len() != dim {
            return Err(IndicatorError::DimensionMismatch);
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(IndicatorError::NonFinite);
        }
    }
    Ok(())
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
