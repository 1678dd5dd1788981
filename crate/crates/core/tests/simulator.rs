use proptest::prelude::*;
use sasbt::sim::{fitness, simulate, ScenarioInput, SimConfig, Thresholds};

fn run(input: ScenarioInput, cfg: &SimConfig) -> sasbt::sim::FitnessVector {
    fitness(&simulate(&input, cfg).unwrap(), cfg, &Thresholds::default()).unwrap()
}

// Lateral gap between the pedestrian start and the bumper edge.
const LATERAL: f64 = 5.0 - 0.9;

#[test]
fn slow_late_pedestrian_stays_clear() {
    let cfg = SimConfig::default();
    for v0c in [1.0, 4.0, 8.0, 12.0] {
        let f = run(ScenarioInput::new(v0c, 0.5, 8.0), &cfg);
        assert!(f.f1 >= 3.0, "v0c {v0c}: f1 {}", f.f1);
        assert!(!f.critical);
    }
}

#[test]
fn stationary_pedestrian_closed_form() {
    // Pedestrian never starts walking within a 5 s horizon.
    let cfg = SimConfig { horizon: 5.0, ..Default::default() };
    let input = |v0c| ScenarioInput::new(v0c, 3.0, 6.0);

    // Ego covers 15 m and never reaches the pedestrian's x.
    let f = run(input(3.0), &cfg);
    let expected = (15.0f64.powi(2) + LATERAL.powi(2)).sqrt();
    assert!((f.f1 - expected).abs() < 1e-9, "{} vs {expected}", f.f1);
    assert!((f.f2 - 3.0).abs() < 1e-12);

    // Ego passes the pedestrian at full speed.
    let f = run(input(10.0), &cfg);
    assert!((f.f1 - LATERAL).abs() < 1e-6, "{}", f.f1);
    assert!((f.f2 - 10.0).abs() < 1e-12);
    assert!(!f.critical);
}

#[test]
fn passing_before_the_crossing_is_safe() {
    let f = run(ScenarioInput::new(12.0, 3.0, 8.0), &SimConfig::default());
    assert!(f.f1 > 1.0 && !f.critical, "{f:?}");
}

#[test]
fn some_scenario_is_critical() {
    let cfg = SimConfig::default();
    let mut found = false;
    for i in 0..12 {
        for j in 0..6 {
            for k in 0..9 {
                let input = ScenarioInput::new(1.0 + i as f64, 0.5 + 0.5 * j as f64, k as f64);
                found |= run(input, &cfg).critical;
            }
        }
    }
    assert!(found);
}

#[test]
fn occluded_pedestrian_not_detected_at_start() {
    let cfg = SimConfig::default();
    for v0c in [1.0, 6.0, 12.0] {
        let tr = simulate(&ScenarioInput::new(v0c, 1.0, 2.0), &cfg).unwrap();
        assert!(!tr.samples[0].detected);
    }
}

proptest! {
    #[test]
    fn closer_stationary_pedestrian_never_farther(
        v0c in 1.0f64..12.0,
        y_far in 2.5f64..8.0,
        shift in 0.0f64..0.5,
    ) {
        let far = SimConfig { horizon: 5.0, pedestrian_start: (30.0, y_far), ..Default::default() };
        let near = SimConfig { pedestrian_start: (30.0, y_far - shift), ..far.clone() };
        let input = ScenarioInput::new(v0c, 1.0, 6.0);
        prop_assert!(run(input, &near).f1 <= run(input, &far).f1);
    }

    #[test]
    fn speeds_never_negative_and_f1_non_negative(
        v0c in 1.0f64..12.0,
        v0p in 0.5f64..3.0,
        t_wait in 0.0f64..8.0,
    ) {
        let cfg = SimConfig { dt: 0.05, ..Default::default() };
        let input = ScenarioInput::new(v0c, v0p, t_wait);
        let tr = simulate(&input, &cfg).unwrap();
        prop_assert!(tr.samples.iter().all(|s| s.ego_speed >= 0.0));
        prop_assert!(tr.samples.windows(2).all(|w| w[1].ego.0 >= w[0].ego.0));
        let f = fitness(&tr, &cfg, &Thresholds::default()).unwrap();
        prop_assert!(f.f1 >= 0.0);
        prop_assert_eq!(f.f2, tr.samples[f.argmin].ego_speed);
    }
}
