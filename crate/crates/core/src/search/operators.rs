use rand::Rng;

use super::{Individual, SearchSpace};

const SBX_EPS: f64 = 1e-14;

/// Bounded simulated binary crossover (Deb & Agrawal), variable-wise with
/// probability 0.5. Returns two children; parents are copied unchanged when the
/// crossover draw fails.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    space: &SearchSpace,
    probability: f64,
    eta: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen::<f64>() > probability {
        return (c1, c2);
    }
    let exp = 1.0 / (eta + 1.0);
    for i in 0..p1.len() {
        if rng.gen::<f64>() > 0.5 || (p1[i] - p2[i]).abs() <= SBX_EPS {
            continue;
        }
        let (y1, y2) = if p1[i] < p2[i] { (p1[i], p2[i]) } else { (p2[i], p1[i]) };
        let (yl, yu) = space.bounds(i);
        let u: f64 = rng.gen();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(exp)
            } else {
                (1.0 / (2.0 - u * alpha)).powf(exp)
            }
        };
        let bq_low = spread(1.0 + 2.0 * (y1 - yl) / (y2 - y1));
        let low = (0.5 * ((y1 + y2) - bq_low * (y2 - y1))).clamp(yl, yu);
        let bq_high = spread(1.0 + 2.0 * (yu - y2) / (y2 - y1));
        let high = (0.5 * ((y1 + y2) + bq_high * (y2 - y1))).clamp(yl, yu);
        if rng.gen::<f64>() <= 0.5 {
            c1[i] = high;
            c2[i] = low;
        } else {
            c1[i] = low;
            c2[i] = high;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation applied gene-wise with `probability`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    genome: &mut [f64],
    space: &SearchSpace,
    probability: f64,
    eta: f64,
    rng: &mut R,
) {
    let pow = 1.0 / (eta + 1.0);
    for (i, y) in genome.iter_mut().enumerate() {
        if rng.gen::<f64>() > probability {
            continue;
        }
        let (yl, yu) = space.bounds(i);
        let range = yu - yl;
        let d1 = (*y - yl) / range;
        let d2 = (yu - *y) / range;
        let u: f64 = rng.gen();
        let dq = if u <= 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0);
            val.powf(pow) - 1.0
        } else {
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0);
            1.0 - val.powf(pow)
        };
        *y = (*y + dq * range).clamp(yl, yu);
    }
}

/// Crowded-comparison order: lower rank, then larger crowding, then earlier evaluation.
pub(crate) fn better(a: &Individual, b: &Individual) -> bool {
    if a.rank != b.rank {
        return a.rank < b.rank;
    }
    if a.crowding != b.crowding {
        return a.crowding > b.crowding;
    }
    a.eval_index < b.eval_index
}

pub(crate) fn tournament<'a, R: Rng + ?Sized>(
    population: &'a [Individual],
    size: usize,
    rng: &mut R,
) -> &'a Individual {
    let mut best = &population[rng.gen_range(0..population.len())];
    for _ in 1..size {
        let challenger = &population[rng.gen_range(0..population.len())];
        if better(challenger, best) {
            best = challenger;
        }
    }
    best
}
