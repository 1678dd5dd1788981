use serde::{Deserialize, Serialize};

use super::DecisionTree;
use crate::search::SearchSpace;

/// A leaf box whose training samples are mostly critical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalRegion {
    pub bounds: SearchSpace,
    pub critical_fraction: f64,
    pub critical: usize,
    pub total: usize,
    /// Indices of the training samples inside the box.
    pub members: Vec<usize>,
}

/// Leaves with at least one critical sample and a critical fraction of at least
/// `threshold`, ordered by descending critical fraction (leaf order on ties).
pub fn extract_regions(tree: &DecisionTree, threshold: f64) -> Vec<CriticalRegion> {
    let mut regions: Vec<CriticalRegion> = tree
        .leaves()
        .into_iter()
        .filter_map(|leaf| {
            let total = leaf.critical + leaf.non_critical;
            if leaf.critical == 0 {
                return None;
            }
            let fraction = leaf.critical as f64 / total as f64;
            (fraction >= threshold).then(|| CriticalRegion {
                bounds: leaf.bounds,
                critical_fraction: fraction,
                critical: leaf.critical,
                total,
                members: leaf.members.to_vec(),
            })
        })
        .collect();
    regions.sort_by(|a, b| b.critical_fraction.total_cmp(&a.critical_fraction));
    regions
}
