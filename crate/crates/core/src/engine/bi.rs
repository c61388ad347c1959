use alloc::format;
use alloc::vec::Vec;

use super::eval::{evaluate, Accumulator, Layout, Shared, CHANNELS};
use super::QueryResult;
use crate::graph::{dijkstra, DistanceMode, Direction, Graph, Vertex, Weight};
use crate::range::{ClosedBox, RangeTree};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Bank {
    trees: Vec<RangeTree>,
    len: usize,
}

/// Bi-chromatic queries when every vertex is labeled by the same hub set
/// `C` in both directions: sources in `A` range over targets in `B` and
/// vice versa. Points keep only the difference and last coordinates.
#[derive(Debug, Clone)]
pub struct BiEngine {
    m: usize,
    modes: Vec<DistanceMode>,
    /// `from[r][v] = dist(c_r, v)`, `to[r][v] = dist(v, c_r)`.
    from: Vec<Vec<Weight>>,
    to: Vec<Vec<Weight>>,
    side: Vec<u8>,
    over_b: Bank,
    over_a: Bank,
}

const IN_A: u8 = 1;
const IN_B: u8 = 2;

impl BiEngine {
    /// `hubs` must be sorted by ID; `from`/`to` hold the full distance rows
    /// of every hub.
    pub fn build(
        hubs: &[Vertex],
        from: Vec<Vec<Weight>>,
        to: Vec<Vec<Weight>>,
        a: &[Vertex],
        b: &[Vertex],
        modes: &[DistanceMode],
    ) -> Result<Self> {
        let m = hubs.len();
        if m == 0 {
            return Err(Error::InvalidParameters("uniform labels need at least one hub".into()));
        }
        if hubs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameters("hubs must be strictly increasing".into()));
        }
        if from.len() != m || to.len() != m {
            return Err(Error::InvalidLabeling("labels are not uniform: missing hub rows".into()));
        }
        let n = from[0].len();
        if from.iter().chain(&to).any(|r| r.len() != n) {
            return Err(Error::InvalidLabeling("labels are not uniform: ragged hub rows".into()));
        }
        if from.iter().chain(&to).flatten().any(|&d| d >= crate::graph::DISTANCE_BOUND) {
            return Err(Error::InvalidLabeling("labels are not uniform: a hub distance is infinite".into()));
        }
        let mut side = alloc::vec![0u8; n];
        for &v in a {
            side[v] |= IN_A;
        }
        for &v in b {
            side[v] |= IN_B;
        }
        let over_b = Self::bank(m, &from, &to, b)?;
        let over_a = Self::bank(m, &from, &to, a)?;
        let mut modes = modes.to_vec();
        modes.sort_unstable();
        modes.dedup();
        Ok(BiEngine { m, modes, from, to, side, over_b, over_a })
    }

    /// Runs the `2|C|` searches from and to the hubs, then builds.
    pub fn from_graph(g: &Graph, hubs: &[Vertex], a: &[Vertex], b: &[Vertex], modes: &[DistanceMode]) -> Result<Self> {
        let mut from = Vec::with_capacity(hubs.len());
        let mut to = Vec::with_capacity(hubs.len());
        for &c in hubs {
            from.push(dijkstra(g, c, Direction::Out)?);
            to.push(dijkstra(g, c, Direction::In)?);
        }
        Self::build(hubs, from, to, a, b, modes)
    }

    fn bank(m: usize, from: &[Vec<Weight>], to: &[Vec<Weight>], members: &[Vertex]) -> Result<Bank> {
        let d = 2 * m - 1;
        let mut trees = Vec::with_capacity(m * m);
        for s in 0..m {
            for t in 0..m {
                let mut coords = Vec::with_capacity(members.len() * d);
                let mut values = Vec::with_capacity(members.len() * CHANNELS);
                for &v in members {
                    let ds = from[s][v] as i64;
                    let dt = to[t][v] as i64;
                    coords.extend((0..m).filter(|&r| r != s).map(|r| from[r][v] as i64 - ds));
                    coords.extend((0..m).filter(|&r| r != t).map(|r| to[r][v] as i64 - dt));
                    coords.push(ds - dt);
                    values.extend([ds, dt, ds + dt]);
                }
                trees.push(RangeTree::from_flat(d, CHANNELS, coords, members.to_vec(), values, None)?);
            }
        }
        Ok(Bank { trees, len: members.len() })
    }

    pub fn hub_count(&self) -> usize {
        self.m
    }

    /// Results for `src` over the opposite color class (B for sources in A,
    /// A for sources in B).
    pub fn query_bi(&self, src: Vertex, modes: &[DistanceMode]) -> Result<Vec<QueryResult>> {
        let n = self.side.len();
        if src >= n {
            return Err(Error::VertexOutOfRange { vertex: src, n });
        }
        if let Some(&md) = modes.iter().find(|md| !self.modes.contains(md)) {
            return Err(Error::InvalidParameters(format!("engine was not built for mode {md}")));
        }
        let bank = match self.side[src] {
            IN_A => &self.over_b,
            IN_B => &self.over_a,
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "vertex {src} must belong to exactly one of A and B"
                )))
            }
        };
        let m = self.m;
        let xs: Vec<Shared> = (0..m).map(|r| Shared { pos: r, dist: self.to[r][src] as i64 }).collect();
        let ys: Vec<Shared> = (0..m).map(|r| Shared { pos: r, dist: self.from[r][src] as i64 }).collect();
        let layout = Layout { diff_x: 0, diff_y: m - 1, last: 2 * m - 2 };
        let mut acc = Accumulator::new(modes);
        evaluate(
            &ClosedBox::full(2 * m - 1),
            &xs,
            &ys,
            layout,
            true,
            Some(bank.len as u64),
            |s, t| &bank.trees[s * m + t],
            &mut acc,
        );
        acc.modes
            .iter()
            .map(|&(mode, a)| QueryResult::from_acc(mode, a, acc.matched, acc.boxes))
            .collect()
    }

    pub fn ecc_bi(&self, src: Vertex, mode: DistanceMode) -> Result<Option<(Weight, Vertex)>> {
        Ok(self.query_bi(src, &[mode])?[0].ecc)
    }

    pub fn dsum_bi(&self, src: Vertex, mode: DistanceMode) -> Result<u128> {
        Ok(self.query_bi(src, &[mode])?[0].dsum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{oracle_all_pairs, DistanceMode::*};

    #[test]
    fn single_hub_is_one_box() {
        let g = crate::graph::gen_star(5).unwrap();
        let e = BiEngine::from_graph(&g, &[0], &[1, 2], &[3, 4], &[Source, Roundtrip]).unwrap();
        let r = e.query_bi(1, &[Source, Roundtrip]).unwrap();
        assert_eq!(r[0].ecc, Some((2, 3)));
        assert_eq!(r[0].dsum, 4);
        assert_eq!(r[1].ecc, Some((4, 3)));
        assert_eq!(e.ecc_bi(4, Source).unwrap(), Some((2, 1)));
    }

    #[test]
    fn all_hubs_on_three_cycle() {
        let g = Graph::directed(3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        let m = oracle_all_pairs(&g).unwrap();
        // A = B = V is not a partition, so check both halves of a split.
        let e = BiEngine::from_graph(&g, &[0, 1, 2], &[0], &[1, 2], &[Source, Min, Max, Roundtrip]).unwrap();
        for (k, mode) in [Source, Min, Max, Roundtrip].into_iter().enumerate() {
            let r = e.query_bi(0, &[Source, Min, Max, Roundtrip]).unwrap();
            let vals: Vec<u64> = [1, 2].iter().map(|&v| m.mode(0, v, mode).unwrap()).collect();
            assert_eq!(r[k].ecc.unwrap().0, *vals.iter().max().unwrap());
            assert_eq!(r[k].dsum, vals.iter().sum::<u64>() as u128);
        }
    }

    #[test]
    fn empty_targets() {
        let g = crate::graph::gen_path(3).unwrap();
        let e = BiEngine::from_graph(&g, &[1], &[0, 2], &[], &[Source]).unwrap();
        assert_eq!(e.ecc_bi(0, Source).unwrap(), None);
        assert!(BiEngine::from_graph(&g, &[], &[0], &[2], &[Source]).is_err());
    }
}
