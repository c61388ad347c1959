use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{Flavor, HubLabeling, Label};
use crate::graph::{dijkstra, Direction, Graph, Vertex, Weight, INFINITY};
use crate::sparse::EliminationForest;
use crate::{Error, Result};

/// Reusable Dijkstra state that resets only touched entries.
struct Scratch {
    dist: Vec<Weight>,
    touched: Vec<Vertex>,
    heap: BinaryHeap<Reverse<(Weight, Vertex)>>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { dist: vec![INFINITY; n], touched: Vec::new(), heap: BinaryHeap::new() }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = INFINITY;
        }
        self.touched.clear();
        self.heap.clear();
    }

    fn push(&mut self, v: Vertex, d: Weight) {
        if d < self.dist[v] {
            if self.dist[v] == INFINITY {
                self.touched.push(v);
            }
            self.dist[v] = d;
            self.heap.push(Reverse((d, v)));
        }
    }
}

/// Pruned landmark labeling. Vertices are processed by descending degree
/// (ties by ID); each runs a forward and a backward Dijkstra that stops at
/// vertices whose distance the current labels already certify.
pub fn build_pruned(g: &Graph) -> Result<HubLabeling> {
    g.ensure_strongly_connected()?;
    let n = g.n();
    let deg: Vec<usize> = (0..n).map(|v| g.out_arcs(v).len() + g.in_arcs(v).len()).collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(deg[v]), v));
    // Labels hold hub ranks while building, so appends keep them sorted.
    let mut out_l: Vec<Label> = vec![Vec::new(); n];
    let mut in_l: Vec<Label> = vec![Vec::new(); n];
    let mut scratch = Scratch::new(n);
    let mut root_dist = vec![INFINITY; n];
    for (rank, &h) in order.iter().enumerate() {
        for dir in [Direction::Out, Direction::In] {
            // Forward search fills in-labels (dist(h,v)); backward fills out-labels.
            let root_label = match dir {
                Direction::Out => &out_l[h],
                Direction::In => &in_l[h],
            };
            for &(r, d) in root_label {
                root_dist[r] = d;
            }
            let root_hubs: Vec<Vertex> = root_label.iter().map(|e| e.0).collect();
            scratch.push(h, 0);
            while let Some(Reverse((d, v))) = scratch.heap.pop() {
                if d > scratch.dist[v] {
                    continue;
                }
                let target = match dir {
                    Direction::Out => &mut in_l[v],
                    Direction::In => &mut out_l[v],
                };
                let covered = target
                    .iter()
                    .any(|&(r, dr)| root_dist[r] != INFINITY && root_dist[r] + dr <= d);
                if covered {
                    continue;
                }
                target.push((rank, d));
                for &(w, wt) in g.arcs(v, dir) {
                    scratch.push(w, d + wt);
                }
            }
            scratch.reset();
            for r in root_hubs {
                root_dist[r] = INFINITY;
            }
        }
    }
    let to_ids = |labels: Vec<Label>| -> Vec<Label> {
        labels
            .into_iter()
            .map(|mut l| {
                for e in &mut l {
                    e.0 = order[e.0];
                }
                l.sort_unstable();
                l
            })
            .collect()
    };
    HubLabeling::new(to_ids(out_l), to_ids(in_l), Flavor::Exact)
}

/// Labels `L(v) = K ∪ {v}` with exact distances for a split graph whose
/// clique is `k`.
pub fn build_split(g: &Graph, k: &[Vertex]) -> Result<HubLabeling> {
    let n = g.n();
    let mut in_k = vec![false; n];
    for &c in k {
        if c >= n {
            return Err(Error::VertexOutOfRange { vertex: c, n });
        }
        in_k[c] = true;
    }
    for &a in k {
        for &b in k {
            if a != b && !g.out_arcs(a).iter().any(|&(x, _)| x == b) {
                return Err(Error::InvalidParameters(format!("K is not a clique: {a} and {b} not adjacent")));
            }
        }
    }
    for s in (0..n).filter(|&v| !in_k[v]) {
        if let Some(&(t, _)) = g.out_arcs(s).iter().find(|&&(t, _)| !in_k[t]) {
            return Err(Error::InvalidParameters(format!(
                "not a split partition: {s} and {t} both lie outside K"
            )));
        }
    }
    g.ensure_strongly_connected()?;
    let mut hubs: Vec<Vertex> = k.to_vec();
    hubs.sort_unstable();
    hubs.dedup();
    let mut out_l: Vec<Label> = vec![Vec::with_capacity(hubs.len() + 1); n];
    let mut in_l: Vec<Label> = vec![Vec::with_capacity(hubs.len() + 1); n];
    for &c in &hubs {
        let from_c = dijkstra(g, c, Direction::Out)?;
        let to_c = dijkstra(g, c, Direction::In)?;
        for v in 0..n {
            in_l[v].push((c, from_c[v]));
            out_l[v].push((c, to_c[v]));
        }
    }
    for v in (0..n).filter(|&v| !in_k[v]) {
        for l in [&mut out_l[v], &mut in_l[v]] {
            let pos = l.partition_point(|e| e.0 < v);
            l.insert(pos, (v, 0));
        }
    }
    HubLabeling::new(out_l, in_l, Flavor::Exact)
}

/// Ancestor labels from an elimination forest: `L+(v) = L-(v)` = ancestors of
/// `v` (including `v`), each storing the distance inside the subgraph induced
/// by that ancestor's subtree. Unreachable ancestors are left out.
pub fn build_elimination(g: &Graph, forest: &EliminationForest) -> Result<HubLabeling> {
    let report = forest.validate(g);
    if !report.is_empty() {
        return Err(Error::InvalidForest(format!("{} edge(s) join incomparable vertices", report.len())));
    }
    let n = g.n();
    let (tin, tout) = forest.euler_intervals();
    let mut out_l: Vec<Label> = vec![Vec::new(); n];
    let mut in_l: Vec<Label> = vec![Vec::new(); n];
    let mut scratch = Scratch::new(n);
    for a in 0..n {
        let inside = |v: Vertex| tin[a] <= tin[v] && tin[v] < tout[a];
        for dir in [Direction::Out, Direction::In] {
            scratch.push(a, 0);
            while let Some(Reverse((d, v))) = scratch.heap.pop() {
                if d > scratch.dist[v] {
                    continue;
                }
                match dir {
                    Direction::Out => in_l[v].push((a, d)),
                    Direction::In => out_l[v].push((a, d)),
                }
                for &(w, wt) in g.arcs(v, dir) {
                    if inside(w) {
                        scratch.push(w, d + wt);
                    }
                }
            }
            scratch.reset();
        }
    }
    for l in out_l.iter_mut().chain(in_l.iter_mut()) {
        l.sort_unstable();
    }
    HubLabeling::new(out_l, in_l, Flavor::Admissible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_path, gen_random_strong, gen_split, gen_star, oracle_all_pairs};
    use crate::labeling::validate;

    #[test]
    fn pruned_star_has_labels_of_size_two() {
        let g = gen_star(5).unwrap();
        let l = build_pruned(&g).unwrap();
        assert_eq!(l.max_label_size(), 2);
        assert!(validate(&g, &l, true).unwrap().is_empty());
    }

    #[test]
    fn pruned_single_vertex() {
        let g = gen_path(1).unwrap();
        let l = build_pruned(&g).unwrap();
        assert_eq!(l.out_label(0), &vec![(0, 0)]);
        assert_eq!(l.in_label(0), &vec![(0, 0)]);
    }

    #[test]
    fn pruned_is_exact_on_random_digraphs() {
        for seed in 0..10 {
            let g = gen_random_strong(60, 150, 20, seed).unwrap();
            let l = build_pruned(&g).unwrap();
            assert!(validate(&g, &l, true).unwrap().is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn split_labels_recover_distance_three() {
        // k1=0, k2=1, s1=2, s2=3
        let g = Graph::undirected(4, &[(0, 1), (2, 0), (3, 1)]).unwrap();
        let l = build_split(&g, &[0, 1]).unwrap();
        assert_eq!(l.est(2, 3), 3);
        assert!(validate(&g, &l, true).unwrap().is_empty());
        assert!(build_split(&g, &[0]).is_err());
        assert!(build_split(&g, &[0, 3]).is_err());
    }

    #[test]
    fn split_labels_on_generated_graphs() {
        for seed in 0..5 {
            let (g, k) = gen_split(5, 20, 0.3, seed).unwrap();
            let l = build_split(&g, &k).unwrap();
            assert!(l.max_label_size() <= k.len() + 1);
            assert!(validate(&g, &l, true).unwrap().is_empty());
        }
        let g = gen_complete(4).unwrap();
        let l = build_split(&g, &[0, 1, 2, 3]).unwrap();
        let m = oracle_all_pairs(&g).unwrap();
        assert!((0..4).all(|u| (0..4).all(|v| l.est(u, v) == m.get(u, v))));
    }

    #[test]
    fn elimination_on_p3_and_k3() {
        let g = gen_path(3).unwrap();
        let f = EliminationForest::new(vec![Some(1), None, Some(1)]).unwrap();
        let l = build_elimination(&g, &f).unwrap();
        assert_eq!(l.out_label(0), &vec![(0, 0), (1, 1)]);
        assert_eq!(l.est(0, 2), 2);
        assert!(validate(&g, &l, false).unwrap().is_empty());

        let k3 = gen_complete(3).unwrap();
        let chain = EliminationForest::new(vec![None, Some(0), Some(1)]).unwrap();
        let l = build_elimination(&k3, &chain).unwrap();
        assert_eq!(l.in_label(2).len(), 3);
        let bad = EliminationForest::new(vec![None, None, None]).unwrap();
        assert!(build_elimination(&k3, &bad).is_err());
    }
}
