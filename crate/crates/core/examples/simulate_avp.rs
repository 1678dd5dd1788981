//! Runs one parking-lot scenario and prints its fitness.
//!
//! cargo run --example simulate_avp -- 8.0 1.5 2.0 [trace.csv]

use sasbt::sim::{fitness, simulate, ScenarioInput, SimConfig, Thresholds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: f64| args.get(i).map_or(Ok(default), |s| s.parse::<f64>());
    let input = ScenarioInput::new(num(0, 8.0)?, num(1, 1.5)?, num(2, 2.0)?);
    let cfg = SimConfig::default();
    let trace = simulate(&input, &cfg)?;
    let f = fitness(&trace, &cfg, &Thresholds::default())?;

    let closest = &trace.samples[f.argmin];
    println!("input       {input:?}");
    println!("f1          {:.3} m at t = {:.2} s", f.f1, closest.t);
    println!("f2          {:.3} m/s", f.f2);
    println!("critical    {}", f.critical);
    match trace.samples.iter().find(|s| s.detected) {
        Some(s) => println!("first seen  t = {:.2} s, ego at x = {:.2}", s.t, s.ego.0),
        None => println!("pedestrian never detected"),
    }
    let last = trace.samples.last().unwrap();
    println!("final       x = {:.2} m, v = {:.2} m/s", last.ego.0, last.ego_speed);

    if let Some(path) = args.get(3) {
        trace.write_csv(std::fs::File::create(path)?)?;
        println!("trace written to {path}");
    }
    Ok(())
}
