use super::{check_points, IndicatorError};

/// Exact hypervolume dominated by `front` and bounded by `reference`.
///
/// Two objectives use a sort-and-sweep; three objectives sweep slabs along the
/// last objective and reuse the 2D routine on each slab.
pub fn hypervolume(front: &[Vec<f64>], reference: &[f64]) -> Result<f64, IndicatorError> {
    let m = reference.len();
    if !(2..=3).contains(&m) {
        return Err(IndicatorError::UnsupportedDimension(m));
    }
    if reference.iter().any(|r| !r.is_finite()) {
        return Err(IndicatorError::NonFinite);
    }
    check_points(front, m)?;
    if let Some(p) = front.iter().find(|p| p.iter().zip(reference).any(|(x, r)| x > r)) {
        return Err(IndicatorError::BeyondReference { point: p.clone() });
    }
    let pts: Vec<&[f64]> = front.iter().map(Vec::as_slice).collect();
    Ok(match m {
        2 => area_2d(pts, reference[0], reference[1]),
        _ => volume_3d(pts, reference),
    })
}

fn area_2d(mut pts: Vec<&[f64]>, rx: f64, ry: f64) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut floor = ry;
    for p in pts {
        if p[1] < floor {
            area += (rx - p[0]) * (floor - p[1]);
            floor = p[1];
        }
    }
    area
}

fn volume_3d(mut pts: Vec<&[f64]>, reference: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    for i in 0..pts.len() {
        let top = pts.get(i + 1).map_or(reference[2], |p| p[2]);
        let depth = top - pts[i][2];
        if depth > 0.0 {
            volume += area_2d(pts[..=i].to_vec(), reference[0], reference[1]) * depth;
        }
    }
    volume
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rectangle() {
        assert_eq!(hypervolume(&[vec![0.5, 0.5]], &[1.0, 1.0]).unwrap(), 0.25);
    }

    #[test]
    fn two_boxes_inclusion_exclusion() {
        // 0.75*0.25 + 0.25*0.75 - 0.25*0.25
        let hv = hypervolume(&[vec![0.25, 0.75], vec![0.75, 0.25]], &[1.0, 1.0]).unwrap();
        assert!((hv - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn empty_front_has_zero_volume() {
        assert_eq!(hypervolume(&[], &[1.0, 1.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            hypervolume(&[vec![1.5, 0.0]], &[1.0, 1.0]),
            Err(IndicatorError::BeyondReference { .. })
        ));
        assert_eq!(
            hypervolume(&[vec![0.0; 4]], &[1.0; 4]),
            Err(IndicatorError::UnsupportedDimension(4))
        );
        assert_eq!(
            hypervolume(&[vec![0.0, 0.0, 0.0]], &[1.0, 1.0]),
            Err(IndicatorError::DimensionMismatch)
        );
    }

    #[test]
    fn dominated_point_adds_nothing() {
        let base = vec![vec![0.2, 0.6], vec![0.6, 0.2]];
        let hv = hypervolume(&base, &[1.0, 1.0]).unwrap();
        let mut more = base.clone();
        more.push(vec![0.7, 0.7]);
        assert_eq!(hypervolume(&more, &[1.0, 1.0]).unwrap(), hv);
        more.push(vec![0.3, 0.3]);
        assert!(hypervolume(&more, &[1.0, 1.0]).unwrap() > hv);
    }
}
