//! Quality indicators on three hand-made fronts scored against the union of
//! all of them.

use sasbt::indicators::{distinct_critical, DistinctnessPolicy, ReferenceSet};

fn main() {
    let fronts = [
        ("even", vec![vec![0.0, 1.0], vec![0.25, 0.75], vec![0.5, 0.5], vec![0.75, 0.25], vec![1.0, 0.0]]),
        ("clustered", vec![vec![0.4, 0.62], vec![0.45, 0.56], vec![0.5, 0.5], vec![0.55, 0.46]]),
        ("behind", vec![vec![0.2, 1.1], vec![0.6, 0.7], vec![1.1, 0.3]]),
    ];
    let reference = ReferenceSet::from_points(fronts.iter().flat_map(|(_, f)| f)).unwrap();
    println!("reference front: {} points, HV reference {:?}", reference.front.len(), reference.hv_reference);

    let policy = DistinctnessPolicy::AnyDifference;
    println!("{:<10} {:>7} {:>7} {:>7}", "front", "HV", "GD", "spread");
    for (name, front) in &fronts {
        let s = reference.snapshot(front, &[], &policy).unwrap();
        println!("{name:<10} {:>7.4} {:>7.4} {:>7.4}", s.hv, s.gd, s.spread);
    }

    let genomes = vec![vec![1.0, 2.0], vec![1.0, 2.0], vec![1.0, 2.05], vec![4.0, 0.5]];
    let loose = DistinctnessPolicy::Thresholded { min_vars: 1, epsilon: 0.1 };
    println!(
        "\ndistinct critical: {} exact, {} with a 0.1 tolerance",
        distinct_critical(&genomes, &policy),
        distinct_critical(&genomes, &loose)
    );
}
