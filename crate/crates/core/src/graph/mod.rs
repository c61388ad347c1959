//! Directed, positively weighted graphs with a fixed vertex order (the IDs).

mod gen;
mod oracle;
mod sssp;

pub use gen::*;
pub use oracle::{
    oracle_all_pairs, oracle_all_pairs_with_limit, oracle_ecc_dsum, oracle_ecc_dsum_with_witness,
    DistanceMatrix, DEFAULT_ORACLE_LIMIT,
};
pub use sssp::{bfs, dijkstra, dijkstra_within, Direction};

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

pub type Vertex = usize;
pub type Weight = u64;

/// Distance sentinel for unreachable vertices.
pub const INFINITY: Weight = u64::MAX;

/// Largest accepted arc weight.
pub const MAX_WEIGHT: Weight = 1 << 40;

/// Finite distances handed to the query machinery must stay below this bound.
pub const DISTANCE_BOUND: Weight = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    out_adj: Vec<Vec<(Vertex, Weight)>>,
    in_adj: Vec<Vec<(Vertex, Weight)>>,
    dropped_self_loops: usize,
}

impl Graph {
    /// Builds a graph from an arc (directed) or edge (undirected) list.
    ///
    /// Parallel arcs collapse to their minimum weight and self-loops are
    /// dropped. For unweighted graphs every weight must be 1.
    pub fn from_arcs<I>(n: usize, arcs: I, directed: bool, weighted: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Weight)>,
    {
        let mut out_adj: Vec<Vec<(Vertex, Weight)>> = vec![Vec::new(); n];
        let mut dropped = 0usize;
        for (u, v, w) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if w == 0 || w > MAX_WEIGHT {
                return Err(Error::InvalidGraph(format!(
                    "arc {u}->{v} has weight {w}; weights must lie in 1..={MAX_WEIGHT}"
                )));
            }
            if !weighted && w != 1 {
                return Err(Error::InvalidGraph(format!(
                    "arc {u}->{v} has weight {w} in an unweighted graph"
                )));
            }
            if u == v {
                dropped += 1;
                continue;
            }
            out_adj[u].push((v, w));
            if !directed {
                out_adj[v].push((u, w));
            }
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} self-loop(s)");
        }
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup_by_key(|&mut (v, _)| v);
        }
        let mut in_adj: Vec<Vec<(Vertex, Weight)>> = vec![Vec::new(); n];
        for (u, list) in out_adj.iter().enumerate() {
            for &(v, w) in list {
                in_adj[v].push((u, w));
            }
        }
        Ok(Graph { n, directed, weighted, out_adj, in_adj, dropped_self_loops: dropped })
    }

    /// Undirected unweighted graph from an edge list.
    pub fn undirected(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::from_arcs(n, edges.iter().map(|&(u, v)| (u, v, 1)), false, false)
    }

    /// Directed weighted graph from an arc list.
    pub fn directed(n: usize, arcs: &[(Vertex, Vertex, Weight)]) -> Result<Self> {
        Self::from_arcs(n, arcs.iter().copied(), true, true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    pub fn out_arcs(&self, v: Vertex) -> &[(Vertex, Weight)] {
        &self.out_adj[v]
    }

    pub fn in_arcs(&self, v: Vertex) -> &[(Vertex, Weight)] {
        &self.in_adj[v]
    }

    pub fn arcs(&self, v: Vertex, dir: Direction) -> &[(Vertex, Weight)] {
        match dir {
            Direction::Out => &self.out_adj[v],
            Direction::In => &self.in_adj[v],
        }
    }

    /// Number of stored arcs (an undirected edge counts twice).
    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Undirected edges with canonical `(min, max)` endpoints, sorted.
    /// For directed graphs this is the underlying simple graph.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, Weight)> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for &(v, w) in &self.out_adj[u] {
                if u < v {
                    edges.push((u, v, w));
                } else if self.directed && !self.out_adj[v].iter().any(|&(x, _)| x == u) {
                    edges.push((v, u, w));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup_by_key(|e| (e.0, e.1));
        edges
    }

    /// Neighbors in the underlying undirected graph, sorted and distinct.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.out_adj[v].iter().map(|&(x, _)| x).collect();
        if self.directed {
            out.extend(self.in_adj[v].iter().map(|&(x, _)| x));
            out.sort_unstable();
            out.dedup();
        }
        out
    }

    /// Degree in the underlying undirected graph.
    pub fn degree(&self, v: Vertex) -> usize {
        if self.directed {
            self.neighbors(v).len()
        } else {
            self.out_adj[v].len()
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Subgraph induced by `vertices` (renumbered in the given order) together
    /// with the map from new to old IDs.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut arcs = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &(v, w) in &self.out_adj[u] {
                let j = index[v];
                if j != usize::MAX && (self.directed || i < j) {
                    arcs.push((i, j, w));
                }
            }
        }
        let g = Graph::from_arcs(vertices.len(), arcs, self.directed, self.weighted)
            .expect("induced subgraph of a valid graph is valid");
        (g, vertices.to_vec())
    }

    /// True when every ordered pair is joined by a directed path.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let reach = |dir: Direction| {
            let mut seen = vec![false; self.n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = queue.pop_front() {
                for &(v, _) in self.arcs(u, dir) {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        queue.push_back(v);
                    }
                }
            }
            count == self.n
        };
        reach(Direction::Out) && reach(Direction::In)
    }

    pub fn ensure_strongly_connected(&self) -> Result<()> {
        if self.is_strongly_connected() {
            Ok(())
        } else {
            Err(Error::NotStronglyConnected)
        }
    }

    /// Connected components of the underlying undirected graph restricted to
    /// the vertices with `alive[v]`.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for dir in [Direction::Out, Direction::In] {
                    for &(v, _) in self.arcs(u, dir) {
                        if alive[v] && comp[v] == usize::MAX {
                            comp[v] = id;
                            members.push(v);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Checks strong connectivity.
pub fn check_strongly_connected(g: &Graph) -> bool {
    g.is_strongly_connected()
}

/// The four ways of turning a pair of directed distances into one value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistanceMode {
    /// `dist(u,v)`
    Source,
    /// `min(dist(u,v), dist(v,u))`
    Min,
    /// `max(dist(u,v), dist(v,u))`
    Max,
    /// `dist(u,v) + dist(v,u)`
    Roundtrip,
}

impl DistanceMode {
    pub const ALL: [DistanceMode; 4] =
        [DistanceMode::Source, DistanceMode::Min, DistanceMode::Max, DistanceMode::Roundtrip];

    pub fn name(self) -> &'static str {
        match self {
            DistanceMode::Source => "source",
            DistanceMode::Min => "min",
            DistanceMode::Max => "max",
            DistanceMode::Roundtrip => "roundtrip",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "source" => Ok(DistanceMode::Source),
            "min" => Ok(DistanceMode::Min),
            "max" => Ok(DistanceMode::Max),
            "roundtrip" => Ok(DistanceMode::Roundtrip),
            other => Err(Error::InvalidParameters(format!("unknown distance mode '{other}'"))),
        }
    }
}

/// Combines `dist(u,v)` and `dist(v,u)` according to `mode`.
pub fn mode_value(duv: Weight, dvu: Weight, mode: DistanceMode) -> Result<Weight> {
    if duv >= DISTANCE_BOUND || dvu >= DISTANCE_BOUND {
        return Err(Error::Overflow("mode_value inputs must be below 2^62"));
    }
    Ok(match mode {
        DistanceMode::Source => duv,
        DistanceMode::Min => duv.min(dvu),
        DistanceMode::Max => duv.max(dvu),
        DistanceMode::Roundtrip => duv + dvu,
    })
}

/// Largest eccentricity and the smallest vertex attaining it.
pub fn diameter_of(ecc: &[Weight]) -> Option<(Weight, Vertex)> {
    let mut best: Option<(Weight, Vertex)> = None;
    for (v, &e) in ecc.iter().enumerate() {
        if best.is_none_or(|(b, _)| e > b) {
            best = Some((e, v));
        }
    }
    best
}

/// Smallest eccentricity and the smallest vertex attaining it.
pub fn radius_of(ecc: &[Weight]) -> Option<(Weight, Vertex)> {
    let mut best: Option<(Weight, Vertex)> = None;
    for (v, &e) in ecc.iter().enumerate() {
        if best.is_none_or(|(b, _)| e < b) {
            best = Some((e, v));
        }
    }
    best
}

/// All vertices minimizing the distance-sum, ascending.
pub fn median_of(dsum: &[u128]) -> Vec<Vertex> {
    let Some(&best) = dsum.iter().min() else {
        return Vec::new();
    };
    (0..dsum.len()).filter(|&v| dsum[v] == best).collect()
}

/// Sum of all distance-sums (ordered pairs).
pub fn wiener_of(dsum: &[u128]) -> u128 {
    dsum.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_arcs_keep_minimum_and_self_loops_drop() {
        let g = Graph::directed(2, &[(0, 1, 5), (0, 1, 3), (1, 1, 2), (1, 0, 1)]).unwrap();
        assert_eq!(g.out_arcs(0), &[(1, 3)]);
        assert_eq!(g.dropped_self_loops(), 1);
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn unweighted_graph_rejects_other_weights() {
        assert!(Graph::from_arcs(2, [(0, 1, 2)], false, false).is_err());
        assert!(Graph::from_arcs(2, [(0, 1, 0)], true, true).is_err());
        assert!(matches!(
            Graph::undirected(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn strong_connectivity() {
        let cycle = Graph::directed(3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        assert!(check_strongly_connected(&cycle));
        let arc = Graph::directed(2, &[(0, 1, 1)]).unwrap();
        assert!(!check_strongly_connected(&arc));
        let p3 = Graph::undirected(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(check_strongly_connected(&p3));
    }

    #[test]
    fn mode_values() {
        assert_eq!(mode_value(1, 5, DistanceMode::Roundtrip).unwrap(), 6);
        assert_eq!(mode_value(1, 5, DistanceMode::Min).unwrap(), 1);
        assert_eq!(mode_value(7, 7, DistanceMode::Max).unwrap(), 7);
        assert_eq!(mode_value(1, 5, DistanceMode::Source).unwrap(), 1);
        assert!(mode_value(DISTANCE_BOUND, 0, DistanceMode::Roundtrip).is_err());
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::directed(3, &[(1, 0, 2), (0, 1, 4), (2, 1, 1)]).unwrap();
        let e: Vec<_> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        assert_eq!(e, vec![(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
    }
}
