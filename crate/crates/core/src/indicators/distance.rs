use super::{check_points, euclidean, IndicatorError};

/// Mean Euclidean distance from each front point to its nearest reference point.
pub fn generational_distance(front: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64, IndicatorError> {
    if front.is_empty() || reference.is_empty() {
        return Err(IndicatorError::Empty);
    }
    let m = reference[0].len();
    check_points(reference, m)?;
    check_points(front, m)?;
    let total: f64 = front
        .iter()
        .map(|p| reference.iter().map(|r| euclidean(p, r)).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / front.len() as f64)
}

/// Deb's spread Δ for a bi-objective front.
///
/// `extremes` are the two boundary solutions of the reference front. The front
/// is sorted by the first objective; `d_f`/`d_l` are the distances from its end
/// points to the matching extremes and `d_i` the consecutive gaps:
/// `Δ = (d_f + d_l + Σ|d_i - mean(d)|) / (d_f + d_l + (N-1)·mean(d))`.
/// A single point scores 1.
pub fn spread(front: &[Vec<f64>], extremes: [&[f64]; 2]) -> Result<f64, IndicatorError> {
    if front.is_empty() {
        return Err(IndicatorError::Empty);
    }
    let m = front[0].len();
    if m != 2 {
        return Err(IndicatorError::UnsupportedDimension(m));
    }
    check_points(front, 2)?;
    if extremes.iter().any(|e| e.len() != 2) {
        return Err(IndicatorError::DimensionMismatch);
    }
    if front.len() == 1 {
        return Ok(1.0);
    }
    let mut sorted: Vec<&Vec<f64>> = front.iter().collect();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
    let (first_extreme, last_extreme) = if extremes[0][0] <= extremes[1][0] {
        (extremes[0], extremes[1])
    } else {
        (extremes[1], extremes[0])
    };
    let d_f = euclidean(sorted[0], first_extreme);
    let d_l = euclidean(sorted[sorted.len() - 1], last_extreme);
    let gaps: Vec<f64> = sorted.windows(2).map(|w| euclidean(w[0], w[1])).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let deviation: f64 = gaps.iter().map(|d| (d - mean).abs()).sum();
    let denom = d_f + d_l + gaps.len() as f64 * mean;
    if denom == 0.0 {
        // Every point coincides with both extremes.
        return Ok(0.0);
    }
    Ok((d_f + d_l + deviation) / denom)
}
