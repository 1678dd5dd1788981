use rand::seq::SliceRandom;
use rand::Rng;

use super::SearchSpace;

/// Latin Hypercube sample of `k` points.
///
/// Each dimension is cut into `k` equal-width strata; every stratum receives
/// exactly one point, placed uniformly inside it, and strata are paired across
/// dimensions by independent random permutations.
pub fn lhs_sample<R: Rng + ?Sized>(space: &SearchSpace, k: usize, rng: &mut R) -> Vec<Vec<f64>> {
    if k == 0 {
        return Vec::new();
    }
    let n = space.dim();
    let mut points = vec![vec![0.0; n]; k];
    let mut strata: Vec<usize> = (0..k).collect();
    for d in 0..n {
        let (lo, hi) = space.bounds(d);
        let width = (hi - lo) / k as f64;
        strata.shuffle(rng);
        for (point, &s) in points.iter_mut().zip(&strata) {
            let u: f64 = rng.gen();
            let x = lo + (s as f64 + u) * width;
            // Rounding can push the last stratum past the bound.
            point[d] = x.clamp(lo + s as f64 * width, hi);
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn stratum(x: f64, lo: f64, hi: f64, k: usize) -> usize {
        (((x - lo) / (hi - lo) * k as f64).floor() as usize).min(k - 1)
    }

    #[test]
    fn single_point_covers_whole_range() {
        let s = SearchSpace::new(vec![0.0; 3], vec![1.0; 3]).unwrap();
        let pts = lhs_sample(&s, 1, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(pts.len(), 1);
        assert!(pts[0].iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn four_strata_on_zero_to_eight() {
        let s = SearchSpace::new(vec![0.0], vec![8.0]).unwrap();
        for seed in 0..20 {
            let mut xs: Vec<f64> = lhs_sample(&s, 4, &mut ChaCha8Rng::seed_from_u64(seed))
                .into_iter()
                .map(|p| p[0])
                .collect();
            xs.sort_by(f64::total_cmp);
            assert!((0.0..2.0).contains(&xs[0]));
            assert!((2.0..4.0).contains(&xs[1]));
            assert!((4.0..6.0).contains(&xs[2]));
            assert!((6.0..=8.0).contains(&xs[3]));
        }
    }

    #[test]
    fn hundred_bin_histogram_has_one_sample_per_bin() {
        let s = SearchSpace::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let pts = lhs_sample(&s, 100, &mut ChaCha8Rng::seed_from_u64(11));
        for d in 0..2 {
            let mut hist = [0usize; 100];
            for p in &pts {
                hist[stratum(p[d], 0.0, 1.0, 100)] += 1;
            }
            assert!(hist.iter().all(|&c| c == 1), "dimension {d}: {hist:?}");
        }
    }
}
