use alloc::vec::Vec;

use super::{dijkstra, mode_value, DistanceMode, Direction, Graph, Vertex, Weight, INFINITY};
use crate::{Error, Result};

/// Default vertex limit for the all-pairs oracle.
pub const DEFAULT_ORACLE_LIMIT: usize = 2000;

/// Dense all-pairs distance table, row `u` holds `dist(u, ·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Weight>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Weight {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[Weight] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_complete(&self) -> bool {
        self.d.iter().all(|&x| x != INFINITY)
    }

    /// `dist(u,v)` combined with `dist(v,u)` under `mode`.
    pub fn mode(&self, u: Vertex, v: Vertex, mode: DistanceMode) -> Result<Weight> {
        mode_value(self.get(u, v), self.get(v, u), mode)
    }
}

pub fn oracle_all_pairs(g: &Graph) -> Result<DistanceMatrix> {
    oracle_all_pairs_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

/// One single-source search per vertex. Refuses graphs larger than `limit`.
pub fn oracle_all_pairs_with_limit(g: &Graph, limit: usize) -> Result<DistanceMatrix> {
    let n = g.n();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let mut d = Vec::with_capacity(n * n);
    for u in 0..n {
        d.extend(dijkstra(g, u, Direction::Out)?);
    }
    Ok(DistanceMatrix { n, d })
}

/// Brute-force eccentricities and distance-sums under `mode`.
pub fn oracle_ecc_dsum(g: &Graph, mode: DistanceMode) -> Result<(Vec<Weight>, Vec<u128>)> {
    let (ecc, _, dsum) = oracle_ecc_dsum_with_witness(g, mode)?;
    Ok((ecc, dsum))
}

/// Like [`oracle_ecc_dsum`], also returning for each `u` the smallest `v`
/// attaining the eccentricity.
pub fn oracle_ecc_dsum_with_witness(
    g: &Graph,
    mode: DistanceMode,
) -> Result<(Vec<Weight>, Vec<Vertex>, Vec<u128>)> {
    let m = oracle_all_pairs(g)?;
    if !m.is_complete() {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.n();
    let mut ecc = Vec::with_capacity(n);
    let mut wit = Vec::with_capacity(n);
    let mut dsum = Vec::with_capacity(n);
    for u in 0..n {
        let (mut e, mut w, mut s) = (0, u, 0u128);
        for v in 0..n {
            let x = m.mode(u, v, mode)?;
            if x > e {
                e = x;
                w = v;
            }
            s += x as u128;
        }
        ecc.push(e);
        wit.push(w);
        dsum.push(s);
    }
    Ok((ecc, wit, dsum))
}
