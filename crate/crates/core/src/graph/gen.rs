//! Deterministic instance generators. All randomness comes from
//! `ChaCha8Rng::seed_from_u64(seed)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Vertex, Weight};
use crate::twdnc::TreeDecomposition;
use crate::{Error, Result};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg.into()))
    }
}

fn check_p(p: f64) -> Result<()> {
    need((0.0..=1.0).contains(&p), "probability must lie in [0, 1]")
}

pub fn gen_path(n: usize) -> Result<Graph> {
    need(n >= 1, "path needs n >= 1")?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::undirected(n, &edges)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "cycle needs n >= 3")?;
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::undirected(n, &edges)
}

/// Star with center 0 and `n - 1` leaves.
pub fn gen_star(n: usize) -> Result<Graph> {
    need(n >= 1, "star needs n >= 1")?;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::undirected(n, &edges)
}

pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph> {
    need(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1")?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::undirected(rows * cols, &edges)
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    need(n >= 1, "complete graph needs n >= 1")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::undirected(n, &edges)
}

/// First `n` vertices of the infinite `fanout`-ary tree in BFS order
/// (vertex `v > 0` hangs below `(v - 1) / fanout`).
pub fn gen_kary_tree(n: usize, fanout: usize) -> Result<Graph> {
    need(n >= 1 && fanout >= 1, "tree needs n >= 1 and fanout >= 1")?;
    let edges: Vec<_> = (1..n).map(|v| ((v - 1) / fanout, v)).collect();
    Graph::undirected(n, &edges)
}

/// Uniformly random recursive tree plus `extra` distinct random edges.
pub fn gen_random_connected(n: usize, extra: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, "graph needs n >= 1")?;
    let max_extra = n * (n - 1) / 2 - (n - 1);
    need(extra <= max_extra, "too many extra edges for a simple graph")?;
    let mut rng = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut set = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        set.insert((a.min(b), a.max(b)));
    }
    let target = set.len() + extra;
    while set.len() < target {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<_> = set.into_iter().collect();
    Graph::undirected(n, &edges)
}

/// Random strongly connected digraph: a Hamiltonian cycle over a random
/// permutation plus random arcs up to `m` in total, weights in `1..=wmax`.
pub fn gen_random_strong(n: usize, m: usize, wmax: Weight, seed: u64) -> Result<Graph> {
    need(n >= 1, "graph needs n >= 1")?;
    need(wmax >= 1, "wmax must be >= 1")?;
    let cycle = if n >= 2 { n } else { 0 };
    need(m >= cycle, "m must be at least n to hold a Hamiltonian cycle")?;
    need(m <= n * (n - 1), "m exceeds the number of possible arcs")?;
    let mut rng = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut arcs = BTreeSet::new();
    if n >= 2 {
        for i in 0..n {
            arcs.insert((perm[i], perm[(i + 1) % n]));
        }
    }
    while arcs.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            arcs.insert((a, b));
        }
    }
    let list: Vec<_> = arcs.into_iter().map(|(a, b)| (a, b, rng.gen_range(1..=wmax))).collect();
    Graph::from_arcs(n, list, true, true)
}

/// Random strongly connected digraph with a dense core: `core` vertices
/// joined by a Hamiltonian cycle plus random arcs (about three per core
/// vertex), every other vertex linked to and from random core vertices, and
/// `extra` further random arcs anywhere. Weights lie in `1..=wmax`.
pub fn gen_core_periphery(n: usize, core: usize, extra: usize, wmax: Weight, seed: u64) -> Result<Graph> {
    need(core >= 1 && core <= n, "core size must lie in 1..=n")?;
    need(wmax >= 1, "wmax must be >= 1")?;
    need(extra <= n * (n - 1) / 2, "too many extra arcs")?;
    let mut rng = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut arcs = BTreeSet::new();
    if core >= 2 {
        for i in 0..core {
            arcs.insert((perm[i], perm[(i + 1) % core]));
        }
        let dense = (3 * core).min(core * (core - 1));
        while arcs.len() < dense {
            let a = rng.gen_range(0..core);
            let b = rng.gen_range(0..core);
            if a != b {
                arcs.insert((perm[a], perm[b]));
            }
        }
    }
    for p in core..n {
        arcs.insert((perm[p], perm[rng.gen_range(0..core)]));
        arcs.insert((perm[rng.gen_range(0..core)], perm[p]));
    }
    let target = arcs.len() + extra;
    while arcs.len() < target {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            arcs.insert((a, b));
        }
    }
    let list: Vec<_> = arcs.into_iter().map(|(a, b)| (a, b, rng.gen_range(1..=wmax))).collect();
    Graph::from_arcs(n, list, true, true)
}

/// Replaces every edge of `g` by two opposite arcs with independent random
/// weights in `1..=wmax`.
pub fn randomize_arcs(g: &Graph, wmax: Weight, seed: u64) -> Result<Graph> {
    need(wmax >= 1, "wmax must be >= 1")?;
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for (u, v, _) in g.edges() {
        arcs.push((u, v, rng.gen_range(1..=wmax)));
        arcs.push((v, u, rng.gen_range(1..=wmax)));
    }
    Graph::from_arcs(g.n(), arcs, true, true)
}

/// Split graph: clique `K` of size `k_size` and stable set `S` of size
/// `s_size`; each S–K pair is adjacent with probability `p`, and every S-vertex
/// keeps at least one clique neighbor. Vertex IDs are shuffled.
pub fn gen_split(k_size: usize, s_size: usize, p: f64, seed: u64) -> Result<(Graph, Vec<Vertex>)> {
    need(k_size >= 1, "clique must be non-empty")?;
    check_p(p)?;
    let n = k_size + s_size;
    let mut rng = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges = Vec::new();
    for a in 0..k_size {
        for b in a + 1..k_size {
            edges.push((perm[a], perm[b]));
        }
    }
    for s in k_size..n {
        let mut any = false;
        for a in 0..k_size {
            if rng.gen_bool(p) {
                edges.push((perm[s], perm[a]));
                any = true;
            }
        }
        if !any {
            let a = rng.gen_range(0..k_size);
            edges.push((perm[s], perm[a]));
        }
    }
    let mut clique: Vec<Vertex> = perm[..k_size].to_vec();
    clique.sort_unstable();
    Ok((Graph::undirected(n, &edges)?, clique))
}

/// Random connected partial k-tree together with the width-`k` decomposition
/// built alongside it. Each k-tree edge survives with probability `p`; every
/// new vertex keeps at least one edge so the graph stays connected.
pub fn gen_partial_ktree(
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
) -> Result<(Graph, TreeDecomposition)> {
    need(n >= 1 && k >= 1, "partial k-tree needs n >= 1 and k >= 1")?;
    check_p(p)?;
    let mut rng = rng(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let base = n.min(k + 1);
    let mut edges = Vec::new();
    for a in 0..base {
        for b in a + 1..base {
            if b == a + 1 || rng.gen_bool(p) {
                edges.push((perm[a], perm[b]));
            }
        }
    }
    let mut bags: Vec<Vec<Vertex>> = vec![(0..base).collect()];
    let mut tree_edges = Vec::new();
    for v in base..n {
        let parent = rng.gen_range(0..bags.len());
        let mut bag = bags[parent].clone();
        let drop = rng.gen_range(0..bag.len());
        bag.swap_remove(drop);
        let forced = rng.gen_range(0..bag.len());
        for (i, &w) in bag.iter().enumerate() {
            if i == forced || rng.gen_bool(p) {
                edges.push((perm[v], perm[w]));
            }
        }
        bag.push(v);
        tree_edges.push((parent, bags.len()));
        bags.push(bag);
    }
    let bags = bags
        .into_iter()
        .map(|b| {
            let mut b: Vec<Vertex> = b.into_iter().map(|x| perm[x]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let g = Graph::undirected(n, &edges)?;
    let td = TreeDecomposition::new(n, bags, tree_edges)
        .map_err(|e| Error::Internal(format!("generated decomposition rejected: {e}")))?;
    Ok((g, td))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{oracle_all_pairs, DistanceMode};

    #[test]
    fn small_families() {
        let p3 = gen_path(3).unwrap();
        assert_eq!(p3.edges().len(), 2);
        assert_eq!(gen_cycle(5).unwrap().edges().len(), 5);
        assert_eq!(gen_star(5).unwrap().degree(0), 4);
        assert_eq!(gen_grid(3, 4).unwrap().edges().len(), 3 * 3 + 2 * 4);
        assert_eq!(gen_complete(5).unwrap().edges().len(), 10);
        assert!(gen_cycle(2).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_random_strong(30, 70, 9, 4).unwrap(), gen_random_strong(30, 70, 9, 4).unwrap());
        assert_ne!(gen_random_strong(30, 70, 9, 4).unwrap(), gen_random_strong(30, 70, 9, 5).unwrap());
        let g = gen_random_strong(40, 90, 5, 1).unwrap();
        assert!(g.is_strongly_connected());
        assert_eq!(g.arc_count(), 90);
    }

    #[test]
    fn complete_split_has_diameter_two() {
        let (g, k) = gen_split(2, 2, 1.0, 3).unwrap();
        assert_eq!(k.len(), 2);
        for s in (0..4).filter(|v| !k.contains(v)) {
            for &c in &k {
                assert!(g.neighbors(s).contains(&c));
            }
        }
        let (ecc, _) = crate::graph::oracle_ecc_dsum(&g, DistanceMode::Source).unwrap();
        assert_eq!(ecc.iter().max(), Some(&2));
    }

    #[test]
    fn split_vertices_keep_a_clique_neighbor() {
        for seed in 0..10 {
            let (g, k) = gen_split(4, 12, 0.0, seed).unwrap();
            assert!(g.is_strongly_connected());
            for v in (0..16).filter(|v| !k.contains(v)) {
                assert!(g.neighbors(v).iter().all(|w| k.contains(w)));
                assert!(!g.neighbors(v).is_empty());
            }
        }
    }

    #[test]
    fn partial_ktree_decomposition_validates() {
        for seed in 0..5 {
            let (g, td) = gen_partial_ktree(50, 3, 0.5, seed).unwrap();
            assert!(td.validate(&g).is_empty());
            assert!(td.width() <= 3);
            assert!(g.is_strongly_connected());
        }
    }

    #[test]
    fn weighted_orientation_is_strong() {
        let g = randomize_arcs(&gen_random_connected(30, 10, 2).unwrap(), 7, 2).unwrap();
        assert!(g.is_strongly_connected());
        let m = oracle_all_pairs(&g).unwrap();
        assert!(m.is_complete());
    }
}
