//! Decision-tree-guided multi-objective search (NSGAII-DT).
//!
//! A CART classifier is trained on every evaluated scenario, leaves that are
//! mostly critical become boxes of the input space, and NSGA-II runs confined to
//! each box. The tree is retrained on the grown archive after every round until
//! the evaluation budget is spent.

mod guided;
mod regions;
mod synthetic;
mod tree;

pub use guided::{nsga2_dt, DtConfig, DtOutcome, IterationReport, RegionRun, StageMark};
pub use regions::{extract_regions, CriticalRegion};
pub use synthetic::BoxTargetEvaluator;
pub use tree::{fit_tree, DecisionTree, Node, TreeParams};

use thiserror::Error;

use crate::search::SearchError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DtError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}
