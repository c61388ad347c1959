use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{Graph, Vertex, Weight, INFINITY};
use crate::{Error, Result};

/// Which arcs a search follows: `Out` computes `dist(s, ·)`, `In` computes `dist(·, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

/// Single-source distances; unreachable vertices get [`INFINITY`].
pub fn dijkstra(g: &Graph, source: Vertex, dir: Direction) -> Result<Vec<Weight>> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: source, n: g.n() });
    }
    if !g.is_weighted() {
        return Ok(bfs(g, source, dir));
    }
    Ok(dijkstra_within(g, source, dir, None))
}

/// Dijkstra restricted to vertices with `allowed[v]` (all vertices when `None`).
/// The source is always allowed.
pub fn dijkstra_within(
    g: &Graph,
    source: Vertex,
    dir: Direction,
    allowed: Option<&[bool]>,
) -> Vec<Weight> {
    let mut dist = vec![INFINITY; g.n()];
    dist[source] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.arcs(u, dir) {
            if allowed.is_some_and(|a| !a[v]) {
                continue;
            }
            let nd = d.saturating_add(w);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Hop distances (ignores weights).
pub fn bfs(g: &Graph, source: Vertex, dir: Direction) -> Vec<Weight> {
    let mut dist = vec![INFINITY; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.arcs(u, dir) {
            if dist[v] == INFINITY {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
