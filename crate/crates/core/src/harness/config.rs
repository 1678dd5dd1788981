use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::dt::DtConfig;
use crate::falsify::{Benchmark, FalsifyConfig, Requirement, SignalParam};
use crate::indicators::DistinctnessPolicy;
use crate::search::SearchConfig;
use crate::sim::{SimConfig, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Compare,
    Falsify,
}

/// A whole experiment, loaded from TOML.
///
/// ```toml
/// kind = "compare"
/// repetitions = 10
/// seed = 0
/// out = "out/compare"
///
/// [compare.nsga2]
/// population = 40
/// generations = 24
///
/// [compare.dt]
/// budget = 1000
/// ```
///
/// Repetition `i` runs with seed `seed + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub repetitions: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub compare: CompareSection,
    pub falsify: FalsifySection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::Compare,
            repetitions: 10,
            seed: 0,
            out: PathBuf::from("out"),
            compare: CompareSection::default(),
            falsify: FalsifySection::default(),
        }
    }
}

/// NSGA-II against NSGAII-DT on the parking-lot simulator.
///
/// The NSGA-II budget is `population * (generations + 1)` and must equal
/// `dt.budget`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareSection {
    pub sim: SimConfig,
    pub thresholds: Thresholds,
    pub nsga2: SearchConfig,
    pub dt: DtConfig,
    /// Operator settings for the region runs inside NSGAII-DT.
    pub variation: SearchConfig,
    pub distinctness: DistinctnessPolicy,
    /// Budget fractions at which every run is scored from its archive prefix.
    pub snapshot_fractions: Vec<f64>,
    /// Fraction used for the early-hypervolume comparison.
    pub early_fraction: f64,
    /// Assumed wall-clock cost of one simulation, for the cost estimate in the report.
    pub seconds_per_simulation: f64,
}

impl Default for CompareSection {
    fn default() -> Self {
        Self {
            sim: SimConfig::default(),
            thresholds: Thresholds::default(),
            nsga2: SearchConfig { population: 40, generations: 24, ..Default::default() },
            dt: DtConfig::default(),
            variation: SearchConfig::default(),
            distinctness: DistinctnessPolicy::AnyDifference,
            snapshot_fractions: vec![0.1, 0.25, 0.5, 0.75, 1.0],
            early_fraction: 0.25,
            seconds_per_simulation: 1.0,
        }
    }
}

impl CompareSection {
    pub fn budget(&self) -> usize {
        self.nsga2.population * (self.nsga2.generations + 1)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let cfg = |e: &dyn std::fmt::Display| HarnessError::Config(e.to_string());
        self.sim.validate().map_err(|e| cfg(&e))?;
        self.nsga2.validate().map_err(|e| cfg(&e))?;
        self.dt.validate().map_err(|e| cfg(&e))?;
        self.variation.validate().map_err(|e| cfg(&e))?;
        if self.dt.budget != self.budget() {
            return Err(HarnessError::Config(format!(
                "unequal budgets: NSGA-II spends {} evaluations ({} x {} generations plus the initial population), dt.budget is {}",
                self.budget(),
                self.nsga2.population,
                self.nsga2.generations,
                self.dt.budget
            )));
        }
        let frac_ok = |f: f64| f > 0.0 && f <= 1.0;
        if !self.snapshot_fractions.iter().all(|&f| frac_ok(f)) || !frac_ok(self.early_fraction) {
            return Err(HarnessError::Config("snapshot fractions must lie in (0, 1]".into()));
        }
        if !(self.seconds_per_simulation.is_finite() && self.seconds_per_simulation >= 0.0) {
            return Err(HarnessError::Config("seconds_per_simulation must be non-negative".into()));
        }
        Ok(())
    }
}

/// Repeated falsification trials on a built-in benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FalsifySection {
    pub benchmark: Benchmark,
    /// Row name in the stats table.
    pub label: String,
    pub requirement: Requirement,
    pub signal: SignalParam,
    pub search: FalsifyConfig,
    /// Also run pure random sampling with the same budget and seeds.
    pub baseline: bool,
}

impl Default for FalsifySection {
    fn default() -> Self {
        Self {
            benchmark: Benchmark::Lti2,
            label: "lti2".into(),
            requirement: Requirement::bounded_magnitude(0, 4.2, 5.0),
            signal: SignalParam::default(),
            search: FalsifyConfig::default(),
            baseline: false,
        }
    }
}

impl FalsifySection {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let cfg = |e: &dyn std::fmt::Display| HarnessError::Config(e.to_string());
        self.signal.validate().map_err(|e| cfg(&e))?;
        self.search.validate().map_err(|e| cfg(&e))?;
        self.search
            .arx
            .resolve(1, self.signal.channels())
            .map_err(|e| cfg(&e))?;
        self.requirement.validate_for(self.signal.horizon).map_err(|e| cfg(&e))?;
        if self.signal.channels() != 1 {
            return Err(HarnessError::Config(format!(
                "{} takes one input channel, the signal has {}",
                self.benchmark.name(),
                self.signal.channels()
            )));
        }
        if self.requirement.max_signal() > 0 {
            return Err(HarnessError::Config(format!("{} has a single output y0", self.benchmark.name())));
        }
        if self.label.contains(',') || self.label.contains('\n') {
            return Err(HarnessError::Config("label may not contain commas or newlines".into()));
        }
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Validates the section selected by `kind`.
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.repetitions == 0 {
            return Err(HarnessError::Config("repetitions must be at least 1".into()));
        }
        match self.kind {
            ExperimentKind::Compare => self.compare.validate(),
            ExperimentKind::Falsify => self.falsify.validate(),
        }
    }

    pub fn seed_for(&self, repetition: usize) -> u64 {
        self.seed.wrapping_add(repetition as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_consistent() {
        let cfg = ExperimentConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.compare.budget(), 1000);
        let f = ExperimentConfig { kind: ExperimentKind::Falsify, ..Default::default() };
        assert!(f.validate().is_ok());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig { kind: ExperimentKind::Falsify, seed: 7, ..Default::default() };
        let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn dotted_keys_and_errors() {
        let text = r#"
            kind = "falsify"
            repetitions = 3
            falsify.benchmark.name = "tank"
            falsify.requirement = "always[0,10] (y <= 3.3)"
            falsify.signal.bounds = [[0.0, 2.0]]
            falsify.signal.horizon = 10.0
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(cfg.falsify.benchmark, Benchmark::tank());
        assert_eq!(cfg.falsify.signal.horizon, 10.0);

        let unequal = "compare.dt.budget = 900";
        assert!(matches!(ExperimentConfig::from_toml(unequal), Err(HarnessError::Config(_))));
        assert!(ExperimentConfig::from_toml("repetitions = 0").is_err());
        assert!(ExperimentConfig::from_toml("bogus = 1").is_err());
        let long = "kind = \"falsify\"\nfalsify.requirement = \"always[0,6] (y <= 1)\"";
        assert!(ExperimentConfig::from_toml(long).is_err());
    }
}
