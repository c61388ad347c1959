//! Eccentricity and distance-sum queries from hub labels.
//!
//! For a source `u`, targets are grouped by their label sizes `(i, j)` and
//! by how `u`'s hubs sit among their own. Each group is a box over the
//! per-target points `p(v,s,t)`; the least common hubs `x`, `y` realizing
//! both directions and the side of `dist(u,v) <= dist(v,u)` refine it
//! further, and the mode value of every target in a refined box is a fixed
//! offset plus a stored channel.

mod bi;
mod boxes;
mod eval;
mod labeled;

pub use bi::BiEngine;
pub use boxes::{boxes_for, point, WitnessTuple};
pub use eval::Side;
pub use labeled::{estimate_ecc_dsum, Engine};
pub(crate) use eval::{idx, witness_constraints, Shared};
pub(crate) use labeled::{apply_choice, Search, Step};

use alloc::format;

use crate::graph::{DistanceMode, Vertex, Weight};
use crate::{Error, Result};

/// Largest label size accepted by default; query cost is exponential in it.
pub const DEFAULT_CAP: usize = 12;

/// How the engine finds the hub placements realized by some target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discovery {
    /// Grouping when `n < 4^k`, search otherwise.
    Auto,
    /// Depth-first placement search pruned by count queries.
    Search,
    /// Scan of the distinct target hub lists.
    Grouping,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub cap: usize,
    /// Drop the backward witness and the side split; answers only the
    /// source mode with `i` trees per bucket instead of `i * j`.
    pub fast_source: bool,
    pub discovery: Discovery,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { cap: DEFAULT_CAP, fast_source: false, discovery: Discovery::Auto }
    }
}

/// Answer for one source and mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub mode: DistanceMode,
    /// Eccentricity and the smallest target attaining it.
    pub ecc: Option<(Weight, Vertex)>,
    pub dsum: u128,
    /// Targets with a finite mode value.
    pub reached: u64,
    /// Targets matched by some box, whatever the mode.
    pub matched: u64,
    /// Range queries issued.
    pub boxes: u64,
}

impl QueryResult {
    pub(crate) fn from_acc(mode: DistanceMode, acc: eval::ModeAcc, matched: u64, boxes: u64) -> Result<Self> {
        let ecc = match acc.best {
            None => None,
            Some((v, w)) => Some((
                Weight::try_from(v).map_err(|_| Error::Overflow("eccentricity outside 0..2^64"))?,
                w,
            )),
        };
        let dsum = u128::try_from(acc.sum)
            .map_err(|_| Error::Internal(format!("negative distance-sum {}", acc.sum)))?;
        Ok(QueryResult { mode, ecc, dsum, reached: acc.count, matched, boxes })
    }
}
