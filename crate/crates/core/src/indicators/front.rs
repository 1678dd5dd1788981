use super::IndicatorError;
use crate::search::dominates;

/// Members of `points` not dominated by any other member, in input order.
/// Exact duplicates of a non-dominated point are all kept.
pub fn non_dominated_filter(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    // Sorting lexicographically lets each candidate be checked only against
    // survivors that precede it.
    idx.sort_by(|&a, &b| {
        points[a]
            .iter()
            .zip(&points[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut keep = vec![false; points.len()];
    let mut survivors: Vec<usize> = Vec::new();
    for &i in &idx {
        if !survivors.iter().any(|&s| dominates(&points[s], &points[i])) {
            survivors.push(i);
            keep[i] = true;
        }
    }
    points.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect()
}

/// Affine map of each objective from `[lo, hi]` onto `[0, 1]`, clamped.
pub fn normalize(points: &[Vec<f64>], bounds: &[(f64, f64)]) -> Result<Vec<Vec<f64>>, IndicatorError> {
    for (k, (lo, hi)) in bounds.iter().enumerate() {
        if !(hi - lo > 0.0) {
            return Err(IndicatorError::ZeroRange(k));
        }
    }
    super::check_points(points, bounds.len())?;
    Ok(points
        .iter()
        .map(|p| {
            p.iter()
                .zip(bounds)
                .map(|(x, (lo, hi))| ((x - lo) / (hi - lo)).clamp(0.0, 1.0))
                .collect()
        })
        .collect())
}

/// Inverse of [`normalize`] for in-range values.
pub fn denormalize(points: &[Vec<f64>], bounds: &[(f64, f64)]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| p.iter().zip(bounds).map(|(u, (lo, hi))| lo + u * (hi - lo)).collect())
        .collect()
}
