//! Elimination forests, low tree-depth colorings and the bounded-diameter
//! decider.

mod coloring;
mod decider;
mod forest;
mod treedepth;

pub use coloring::{depth_coloring, validate_low_td_coloring, ColoringReport, LowTDColoring, ValidateOptions};
pub use decider::{decide_diameter_le_k, DeciderOptions, DiameterDecision};
pub use forest::EliminationForest;
pub use treedepth::{heuristic_forest, treedepth_exact, TreeDepth, EXACT_LIMIT};
