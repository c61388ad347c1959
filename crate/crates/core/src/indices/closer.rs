//! Counts of targets strictly closer to `u` than to `v`, over vertices
//! (Szeged) or edges (Padmakar-Ivan).
//!
//! A target `z` with symmetric label `L(z)` is stored as the points
//! `p(z,s,t) = p(z,s) || diffs of p(z,t)`: the hub IDs once, then the
//! difference blocks anchored at `s` and at `t`. With `x = q_s(z)` the least
//! witness for `u` and `y = q_t(z)` the one for `v`, `z` is closer to `u`
//! exactly when `d(q_t,z) - d(q_s,z) > d(u,x) - d(v,y)`, one more bound on a
//! coordinate of the `s` block.
//!
//! An edge `e = zz'` is a target whose label is the union of `L(z)` and
//! `L(z')` with the smaller distance on shared hubs, so that the label
//! estimate is `min(dist(u,z), dist(u,z')) = dist(u,e)`.

use alloc::vec::Vec;

use super::place::{placements, push_point, resolve, Block, Placement};
use super::{by_size, check_graph, symmetric_labels, IndexOptions};
use crate::engine::{idx, witness_constraints, Discovery};
use crate::graph::{Graph, Vertex};
use crate::labeling::{merge, HubLabeling, Label};
use crate::range::RangeTree;
use crate::{Error, Result};

/// What the targets of a [`CloserEngine`] are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Targets {
    Vertices,
    Edges,
}

#[derive(Debug, Clone)]
struct Bucket {
    block: Block,
    /// `trees[s * i + t]` holds `p(z,s,t)`.
    trees: Vec<RangeTree>,
}

#[derive(Debug, Clone)]
pub struct CloserEngine {
    kind: Targets,
    /// Source labels `L(u)`.
    labels: Vec<Label>,
    /// Canonical undirected edges `(z, z')`, `z < z'`.
    edges: Vec<(Vertex, Vertex)>,
    discovery: Discovery,
    buckets: Vec<Bucket>,
    targets: usize,
}

impl CloserEngine {
    pub fn build(g: &Graph, l: &HubLabeling, kind: Targets, opts: IndexOptions) -> Result<Self> {
        check_graph(g, false)?;
        let labels = symmetric_labels(g, l, opts.cap)?;
        let edges: Vec<(Vertex, Vertex)> = g.edges().into_iter().map(|(a, b, _)| (a, b)).collect();
        let tlabels: Vec<Label> = match kind {
            Targets::Vertices => labels.clone(),
            Targets::Edges => edges.iter().map(|&(a, b)| merge(&labels[a], &labels[b])).collect(),
        };
        let k = tlabels.iter().map(Vec::len).max().unwrap_or(0);
        let discovery = resolve(opts.discovery, tlabels.len(), k);
        let mut buckets = Vec::new();
        for (i, members) in by_size(&tlabels) {
            let d = 3 * i - 2;
            let mut trees = Vec::with_capacity(i * i);
            for s in 0..i {
                for t in 0..i {
                    let mut coords = Vec::with_capacity(members.len() * d);
                    for &z in &members {
                        push_point(&tlabels[z], &[s, t], &mut coords);
                    }
                    trees.push(RangeTree::from_flat(d, 0, coords, members.clone(), Vec::new(), None)?);
                }
            }
            buckets.push(Bucket { block: Block::new(i, members, &tlabels, discovery), trees });
        }
        Ok(CloserEngine { kind, labels, edges, discovery, buckets, targets: tlabels.len() })
    }

    pub fn kind(&self) -> Targets {
        self.kind
    }

    pub fn discovery(&self) -> Discovery {
        self.discovery
    }

    pub fn target_count(&self) -> usize {
        self.targets
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// `(targets strictly closer to u than to v, targets matched)`.
    pub fn count(&self, u: Vertex, v: Vertex) -> Result<(u64, u64)> {
        let n = self.labels.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        let (lu, lv) = (&self.labels[u], &self.labels[v]);
        let (mut closer, mut matched) = (0, 0);
        for b in &self.buckets {
            let i = b.block.i;
            let dim = 3 * i - 2;
            for Placement { base, shared, count } in placements(&b.block, &[lu, lv], dim, &b.trees[0], self.discovery) {
                let (xs, ys) = (&shared[0], &shared[1]);
                if xs.is_empty() || ys.is_empty() {
                    // One side is unreachable under the labeling.
                    if ys.is_empty() && !xs.is_empty() {
                        closer += count;
                    }
                    matched += count;
                    continue;
                }
                let mut got = 0;
                'witness: for a in 0..xs.len() {
                    let mut bx = base.clone();
                    witness_constraints(&mut bx, xs, a, i);
                    if bx.is_empty() {
                        continue;
                    }
                    for c in 0..ys.len() {
                        let mut bxy = bx.clone();
                        witness_constraints(&mut bxy, ys, c, 2 * i - 1);
                        let (s, t) = (xs[a].pos, ys[c].pos);
                        let tree = &b.trees[s * i + t];
                        let m = tree.count_into(&bxy);
                        if m == 0 {
                            continue;
                        }
                        got += m;
                        let gap = xs[a].dist - ys[c].dist;
                        if s == t {
                            if gap < 0 {
                                closer += m;
                            }
                        } else {
                            bxy.greater(i + idx(t, s), gap);
                            closer += tree.count_into(&bxy);
                        }
                        if got >= count {
                            break 'witness;
                        }
                    }
                }
                matched += got;
            }
        }
        if matched != self.targets as u64 {
            return Err(Error::Internal(alloc::format!(
                "pair ({u}, {v}): boxes matched {matched} targets, expected {}",
                self.targets
            )));
        }
        Ok((closer, matched))
    }

    /// `n_uv` (vertex targets) or `n^e_uv` (edge targets).
    pub fn closer(&self, u: Vertex, v: Vertex) -> Result<u64> {
        if u == v {
            return Ok(0);
        }
        Ok(self.count(u, v)?.0)
    }

    /// `(closer(z, z'), closer(z', z))` for every edge.
    pub fn edge_counts(&self) -> Result<Vec<(u64, u64)>> {
        self.edges.iter().map(|&(a, b)| Ok((self.closer(a, b)?, self.closer(b, a)?))).collect()
    }

    /// `sum over edges uv of n_uv * n_vu`; needs vertex targets.
    pub fn szeged(&self) -> Result<u128> {
        self.expect(Targets::Vertices)?;
        Ok(self.edge_counts()?.iter().map(|&(a, b)| a as u128 * b as u128).sum())
    }

    /// `sum over edges uv of n^e_uv + n^e_vu`; needs edge targets.
    pub fn padmakar_ivan(&self) -> Result<u128> {
        self.expect(Targets::Edges)?;
        Ok(self.edge_counts()?.iter().map(|&(a, b)| a as u128 + b as u128).sum())
    }

    fn expect(&self, kind: Targets) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidParameters(alloc::format!("engine holds {:?} targets", self.kind)));
        }
        Ok(())
    }
}
