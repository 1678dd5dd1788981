//! Surrogate-assisted search-based testing.
//!
//! Two testing pipelines share this crate:
//!
//! * **Decision-tree-guided scenario search** ([`dt`]): NSGA-II ([`search`]) over a
//!   deterministic car/pedestrian parking-lot simulator ([`sim`]), with a CART
//!   classifier that learns critical input regions and focuses the search inside them.
//! * **Approximation-refinement falsification** ([`falsify`]): an ARX surrogate is
//!   fitted from executed traces, searched for requirement-violating inputs with
//!   simulated annealing, and every candidate is confirmed on the real system.
//!
//! [`indicators`] scores the outcome (hypervolume, generational distance, spread,
//! distinct critical scenarios) and [`harness`] wires everything into reproducible
//! experiments driven by a config file.

pub mod dt;
pub mod falsify;
pub mod harness;
pub mod indicators;
pub mod search;
pub mod sim;
