//! Topological indices of undirected unweighted connected graphs, computed
//! from a hub labeling through the same box decomposition as the
//! eccentricity engine, specialized to symmetric labels `L(v)`.
//!
//! Pair sums are accumulated over ordered pairs `(u, v)`, `u != v`;
//! [`IndexReport::unordered`] halves them.

mod brute;
mod closer;
mod place;
mod simple;

pub use brute::{brute_closer, brute_edge_closer, brute_indices};
pub use closer::{CloserEngine, Targets};
pub use simple::{decimal, SimpleEngine, SourceSums};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::engine::Discovery;
use crate::graph::{Graph, Vertex};
use crate::labeling::{merge, tighten, Flavor, HubLabeling, Label};
use crate::{Error, Result};

/// Largest label size accepted by default by the index engines.
pub const INDEX_CAP: usize = 32;
/// Largest exponent accepted by [`SimpleEngine::power_sum`].
pub const MAX_POWER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexOptions {
    pub cap: usize,
    pub discovery: Discovery,
    /// Accept weighted input; only the Wiener index and power sums are
    /// then available.
    pub allow_weighted: bool,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { cap: INDEX_CAP, discovery: Discovery::Auto, allow_weighted: false }
    }
}

/// All indices of one graph. Pair sums are over ordered pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub n: usize,
    pub edges: usize,
    pub wiener: u128,
    /// `sum d^a` for `a = 1, 2, 3`.
    pub power_sums: [BigUint; 3],
    pub hyper_wiener: BigRational,
    pub mti: u128,
    pub harary: BigRational,
    pub rcw: BigRational,
    pub szeged: u128,
    pub padmakar_ivan: u128,
    /// Only the brute-force oracle fills this in.
    pub randic: Option<f64>,
}

/// Halved pair sums (each unordered pair counted once).
#[derive(Debug, Clone, PartialEq)]
pub struct Unordered {
    pub wiener: u128,
    pub hyper_wiener: BigRational,
    pub mti: u128,
    pub harary: BigRational,
    pub rcw: BigRational,
}

impl IndexReport {
    pub fn unordered(&self) -> Unordered {
        let two = BigRational::from_integer(2.into());
        Unordered {
            wiener: self.wiener / 2,
            hyper_wiener: &self.hyper_wiener / &two,
            mti: self.mti / 2,
            harary: &self.harary / &two,
            rcw: &self.rcw / &two,
        }
    }

    /// Equality on every field the range framework computes.
    pub fn same_values(&self, other: &IndexReport) -> bool {
        IndexReport { randic: None, ..self.clone() } == IndexReport { randic: None, ..other.clone() }
    }
}

/// Every index through the range engines.
pub fn compute_indices(g: &Graph, l: &HubLabeling, opts: IndexOptions) -> Result<IndexReport> {
    let simple = SimpleEngine::build(g, l, 3, opts)?;
    let vertices = CloserEngine::build(g, l, Targets::Vertices, opts)?;
    let edges = CloserEngine::build(g, l, Targets::Edges, opts)?;
    Ok(IndexReport {
        n: g.n(),
        edges: g.edges().len(),
        wiener: simple.wiener()?,
        power_sums: [simple.power_sum(1)?, simple.power_sum(2)?, simple.power_sum(3)?],
        hyper_wiener: simple.hyper_wiener()?,
        mti: simple.mti()?,
        harary: simple.harary()?,
        rcw: simple.rcw()?,
        szeged: vertices.szeged()?,
        padmakar_ivan: edges.padmakar_ivan()?,
        randic: None,
    })
}

/// Rejects directed, disconnected and (unless allowed) weighted graphs.
pub(crate) fn check_graph(g: &Graph, allow_weighted: bool) -> Result<()> {
    if g.is_directed() {
        return Err(Error::Unsupported("indices need an undirected graph".into()));
    }
    if g.is_weighted() && !allow_weighted {
        return Err(Error::Unsupported("indices need an unweighted graph".into()));
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    Ok(())
}

/// Symmetric labels `L(v)`: the union of both directions with exact
/// distances. Admissible labelings are tightened first.
pub(crate) fn symmetric_labels(g: &Graph, l: &HubLabeling, cap: usize) -> Result<Vec<Label>> {
    if l.n() != g.n() {
        return Err(Error::InvalidLabeling(format!("labeling has {} vertices, graph has {}", l.n(), g.n())));
    }
    let tight;
    let l = if l.flavor() == Flavor::Exact {
        l
    } else {
        tight = tighten(l)?;
        &tight
    };
    let labels: Vec<Label> = (0..l.n()).map(|v| merge(l.out_label(v), l.in_label(v))).collect();
    let k = labels.iter().map(Vec::len).max().unwrap_or(0);
    if k > cap {
        return Err(Error::LabelCap { k, cap });
    }
    Ok(labels)
}

/// Groups target IDs by label size.
pub(crate) fn by_size(labels: &[Label]) -> Vec<(usize, Vec<Vertex>)> {
    let mut sizes: alloc::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for (v, l) in labels.iter().enumerate() {
        sizes.entry(l.len()).or_default().push(v);
    }
    sizes.into_iter().collect()
}
