//! Identifies ARX models of the two built-in benchmarks from random input
//! traces and compares free-run predictions on a fresh input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sasbt::falsify::{fit_arx, simulate_arx, ArxConfig, Benchmark, Sut, TimeSeries};

fn random_input(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> TimeSeries {
    TimeSeries::scalar(0.1, (0..n).map(|_| rng.gen_range(lo..hi)))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (sut, lo, hi) in [(Benchmark::Lti2, -1.0, 1.0), (Benchmark::tank(), 0.0, 2.0)] {
        let data: Vec<_> = (0..4)
            .map(|_| {
                let u = random_input(&mut rng, 80, lo, hi);
                let y = sut.simulate(&u).unwrap();
                (u, y)
            })
            .collect();
        let test_u = random_input(&mut rng, 80, lo, hi);
        let test_y = sut.simulate(&test_u).unwrap().channel(0);
        println!("{}", sut.name());
        for (na, nb, nk) in [(1, 1, 1), (2, 2, 1), (2, 2, 2)] {
            let model = fit_arx(&data, &ArxConfig::siso(na, nb, nk)).unwrap();
            let pred = simulate_arx(&model, &test_u).unwrap().channel(0);
            let err = pred.iter().zip(&test_y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let theta: Vec<String> = model.theta[0].iter().map(|t| format!("{t:.4}")).collect();
            println!(
                "  na={na} nb={nb} nk={nk}  theta [{}]  residual {:.2e}  free-run max error {err:.2e}",
                theta.join(", "),
                model.residual_norm
            );
        }
    }
}
