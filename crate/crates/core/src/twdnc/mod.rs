//! Divide and conquer over tree decompositions.

mod dnc;
mod td;

pub use dnc::{balanced_separator, dnc_roundtrip, DncOptions, DncReport, SeparatorSplit, SplitRecord, AUDIT_LIMIT};
pub use td::{heuristic_td, TdViolation, TreeDecomposition};
