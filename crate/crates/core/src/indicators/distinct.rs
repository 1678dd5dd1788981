use std::collections::HashSet;

use serde::{Deserialize, Serialize};

/// When two critical scenarios count as different.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DistinctnessPolicy {
    /// Any differing input value.
    AnyDifference,
    /// At least `min_vars` inputs each differing by more than `epsilon`.
    Thresholded { min_vars: usize, epsilon: f64 },
}

impl Default for DistinctnessPolicy {
    fn default() -> Self {
        Self::AnyDifference
    }
}

fn key(genome: &[f64]) -> Vec<u64> {
    // +0.0 and -0.0 are the same input.
    genome.iter().map(|x| (x + 0.0).to_bits()).collect()
}

/// Number of distinct genomes under `policy`. Thresholded mode keeps genomes
/// greedily in input order, accepting one only if it is distinct from every
/// genome already kept.
pub fn distinct_critical(genomes: &[Vec<f64>], policy: &DistinctnessPolicy) -> usize {
    match *policy {
        DistinctnessPolicy::AnyDifference => {
            genomes.iter().map(|g| key(g)).collect::<HashSet<_>>().len()
        }
        DistinctnessPolicy::Thresholded { min_vars, epsilon } => {
            let mut kept: Vec<&[f64]> = Vec::new();
            for g in genomes {
                let distinct = kept.iter().all(|k| {
                    k.iter().zip(g).filter(|(a, b)| (*a - *b).abs() > epsilon).count() >= min_vars
                });
                if distinct {
                    kept.push(g);
                }
            }
            kept.len()
        }
    }
}
