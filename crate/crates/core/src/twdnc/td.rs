use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

/// Tree over bags of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    VertexCount { td: usize, graph: usize },
    /// The vertex occurs in no bag.
    MissingVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    /// The bags holding the vertex do not form a subtree.
    DisconnectedOccurrence(Vertex),
}

impl TreeDecomposition {
    /// Checks ranges and that the bag graph is a tree. Bags are sorted.
    pub fn new(n: usize, mut bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
            if let Some(&v) = bag.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let b = bags.len();
        if b == 0 {
            if n > 0 {
                return Err(Error::InvalidDecomposition("no bags for a non-empty graph".into()));
            }
            return Ok(TreeDecomposition { n, bags, edges });
        }
        if edges.len() != b - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{b} bags need {} tree edges, got {}",
                b - 1,
                edges.len()
            )));
        }
        let mut dsu: Vec<usize> = (0..b).collect();
        fn find(d: &mut [usize], mut x: usize) -> usize {
            while d[x] != x {
                d[x] = d[d[x]];
                x = d[x];
            }
            x
        }
        for &(a, c) in &edges {
            if a >= b || c >= b {
                return Err(Error::InvalidDecomposition(format!("tree edge {a}-{c} names a missing bag")));
            }
            let (ra, rc) = (find(&mut dsu, a), find(&mut dsu, c));
            if ra == rc {
                return Err(Error::InvalidDecomposition("bag graph contains a cycle".into()));
            }
            dsu[ra] = rc;
        }
        Ok(TreeDecomposition { n, bags, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Both decomposition axioms checked against the underlying undirected
    /// graph of `g`.
    pub fn validate(&self, g: &Graph) -> Vec<TdViolation> {
        let mut out = Vec::new();
        if g.n() != self.n {
            out.push(TdViolation::VertexCount { td: self.n, graph: g.n() });
            return out;
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders[v].push(i);
            }
        }
        for (u, v, _) in g.edges() {
            let (a, b) = (&holders[u], &holders[v]);
            if !a.iter().any(|x| b.binary_search(x).is_ok()) {
                out.push(TdViolation::UncoveredEdge(u, v));
            }
        }
        let adj = self.tree_adjacency();
        let mut mark = vec![usize::MAX; self.bags.len()];
        for v in 0..self.n {
            let h = &holders[v];
            if h.is_empty() {
                out.push(TdViolation::MissingVertex(v));
                continue;
            }
            for &i in h {
                mark[i] = v;
            }
            let mut seen = BTreeSet::from([h[0]]);
            let mut stack = vec![h[0]];
            while let Some(i) = stack.pop() {
                for &j in &adj[i] {
                    if mark[j] == v && seen.insert(j) {
                        stack.push(j);
                    }
                }
            }
            if seen.len() != h.len() {
                out.push(TdViolation::DisconnectedOccurrence(v));
            }
        }
        out
    }
}

/// Decomposition from a min-degree elimination ordering (ties by ID).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { n, bags: Vec::new(), edges: Vec::new() };
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).into_iter().collect()).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    let mut position = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        position[v] = order.len();
        order.push(v);
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        for &a in &nb {
            queue.remove(&(adj[a].len(), a));
            adj[a].remove(&v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            queue.insert((adj[a].len(), a));
        }
    }
    // Bag of v hangs below the bag of its earliest-eliminated later neighbor;
    // bags without one are chained to the final bag.
    let last = n - 1;
    let mut edges = Vec::with_capacity(n - 1);
    for (i, bag) in bags.iter().enumerate() {
        if i == last {
            continue;
        }
        let next = bag
            .iter()
            .map(|&u| position[u])
            .filter(|&p| p > i)
            .min()
            .unwrap_or(last);
        edges.push((i, next));
    }
    TreeDecomposition::new(n, bags, edges).expect("elimination bags form a tree")
}
