//! Parses requirements and evaluates their robustness on a sampled sine wave.

use sasbt::falsify::{Requirement, TimeSeries};

fn main() {
    let trace = TimeSeries::scalar(0.1, (0..=100).map(|k| 3.0 * (k as f64 * 0.1).sin()));
    let formulas = [
        "always[0,10] ((y <= 3.5) and (y >= -3.5))",
        "always[0,10] (y <= 2.5)",
        "eventually[0,2] (y >= 2.9)",
        "always[0,5] (eventually[0,4] (y <= -2))",
        "not (eventually[1,3] (y >= 3)) or always[0,1] (y >= 0)",
    ];
    for text in formulas {
        let req: Requirement = text.parse().unwrap();
        let rob = req.robustness(&trace).unwrap();
        let verdict = if rob >= 0.0 { "satisfied" } else { "violated" };
        println!("{rob:>8.4}  {verdict:<9}  {req}");
    }
    match "always[0,20] (y <= 1)".parse::<Requirement>().unwrap().robustness(&trace) {
        Ok(r) => println!("unexpected robustness {r}"),
        Err(e) => println!("too short: {e}"),
    }
}
