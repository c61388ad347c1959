//! Exact tree-depth on small components and a fast heuristic forest.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::EliminationForest;
use crate::graph::{Graph, Vertex};
use crate::twdnc::{balanced_separator, heuristic_td};
use crate::Result;

/// Default component size up to which tree-depth is computed exactly.
pub const EXACT_LIMIT: usize = 25;

/// A forest together with its height and whether that height is optimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDepth {
    pub depth: usize,
    pub forest: EliminationForest,
    /// False when some component exceeded the exact limit and was handled
    /// by [`heuristic_forest`]; `depth` is then an upper bound.
    pub exact: bool,
}

/// Tree-depth of `g`'s underlying undirected graph. Components with at most
/// `limit` vertices (and never more than 64) are solved exactly by memoized
/// recursion `td(S) = 1 + min over v of max over components C of S - v of
/// td(C)`; larger ones fall back to the heuristic.
pub fn treedepth_exact(g: &Graph, limit: usize) -> Result<TreeDepth> {
    let n = g.n();
    let limit = limit.min(64);
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut exact = true;
    for comp in g.components_within(&vec![true; n]) {
        if comp.len() <= limit {
            let (h, _) = g.induced_subgraph(&comp);
            let mut solver = Exact::new(&h);
            let all = if comp.len() == 64 { u64::MAX } else { (1u64 << comp.len()) - 1 };
            solver.td(all, u8::MAX);
            let mut local = vec![None; comp.len()];
            solver.assemble(all, None, &mut local);
            for (i, p) in local.into_iter().enumerate() {
                parent[comp[i]] = p.map(|j| comp[j]);
            }
        } else {
            exact = false;
            let (h, _) = g.induced_subgraph(&comp);
            let f = heuristic_forest(&h);
            for (i, p) in f.parents().iter().enumerate() {
                parent[comp[i]] = p.map(|j| comp[j]);
            }
        }
    }
    let forest = EliminationForest::new(parent)?;
    Ok(TreeDepth { depth: forest.height(), forest, exact })
}

struct Exact {
    adj: Vec<u64>,
    /// Connected vertex set to (tree-depth, best root).
    memo: BTreeMap<u64, (u8, u8)>,
    /// Connected vertex set to a proven lower bound.
    lower: BTreeMap<u64, u8>,
}

impl Exact {
    fn new(h: &Graph) -> Self {
        let adj = (0..h.n()).map(|v| h.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
        Exact { adj, memo: BTreeMap::new(), lower: BTreeMap::new() }
    }

    fn components(&self, mut s: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while s != 0 {
            let mut comp = s & s.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & s & !comp;
                comp |= new;
                frontier |= new;
            }
            s &= !comp;
            out.push(comp);
        }
        out
    }

    /// Tree-depth of the connected set `s` when it is below `cap`;
    /// otherwise some value at least `cap`.
    fn td(&mut self, s: u64, cap: u8) -> u8 {
        let size = s.count_ones() as u8;
        if size <= 1 {
            return size;
        }
        if let Some(&(d, _)) = self.memo.get(&s) {
            return d;
        }
        let floor = self.degeneracy(s) + 1;
        if floor >= cap || self.lower.get(&s).is_some_and(|&l| l >= cap) {
            return cap;
        }
        let mut cand: Vec<usize> = (0..64).filter(|&v| s >> v & 1 == 1).collect();
        cand.sort_by_key(|&v| core::cmp::Reverse((self.adj[v] & s).count_ones()));
        let mut best = cap.min(size + 1);
        let mut root = None;
        for v in cand {
            let mut comps = self.components(s & !(1 << v));
            comps.sort_by_key(|c| core::cmp::Reverse(c.count_ones()));
            let mut worst = 0;
            for c in comps {
                if c.count_ones() as u8 <= worst {
                    break;
                }
                worst = worst.max(self.td(c, best - 1));
                if worst + 1 >= best {
                    break;
                }
            }
            if worst + 1 < best {
                best = worst + 1;
                root = Some(v as u8);
                if best <= floor {
                    break;
                }
            }
        }
        match root {
            Some(r) => {
                self.memo.insert(s, (best, r));
                best
            }
            None => {
                self.lower.insert(s, cap);
                cap
            }
        }
    }

    /// Degeneracy of `s`; tree-depth is always above it.
    fn degeneracy(&self, mut s: u64) -> u8 {
        let mut best = 0;
        while s != 0 {
            let (mut v, mut low) = (0, u32::MAX);
            let mut rest = s;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = (self.adj[w] & s).count_ones();
                if d < low {
                    (v, low) = (w, d);
                }
            }
            best = best.max(low as u8);
            s &= !(1 << v);
        }
        best
    }

    fn assemble(&mut self, s: u64, parent: Option<usize>, out: &mut [Option<usize>]) {
        for c in self.components(s) {
            let root = if c.count_ones() == 1 {
                c.trailing_zeros() as usize
            } else {
                self.td(c, u8::MAX);
                self.memo[&c].1 as usize
            };
            out[root] = parent;
            self.assemble(c & !(1 << root), Some(root), out);
        }
    }
}

/// Valid elimination forest by recursive splitting. Tree components are
/// split at a centroid. Other components are split either at the vertex
/// whose removal leaves the smallest largest part, or at a balanced bag of a
/// min-degree tree decomposition; both forests are built and the lower one
/// is kept.
pub fn heuristic_forest(g: &Graph) -> EliminationForest {
    let greedy = split_forest(g, false);
    let bags = split_forest(g, true);
    if bags.height() < greedy.height() {
        bags
    } else {
        greedy
    }
}

fn split_forest(g: &Graph, by_bags: bool) -> EliminationForest {
    let n = g.n();
    let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut alive = vec![true; n];
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack: Vec<(Vec<Vertex>, Option<Vertex>)> = Vec::new();
    for s in 0..n {
        if !seen[s] {
            let comp = collect(&adj, &alive, &mut seen, s);
            stack.push((comp, None));
        }
    }
    let mut size = vec![0usize; n];
    let mut visited = vec![false; n];
    while let Some((comp, up)) = stack.pop() {
        let degree = |v: Vertex| adj[v].iter().filter(|&&w| alive[w]).count();
        let edges: usize = comp.iter().map(|&v| degree(v)).sum::<usize>() / 2;
        let chain = if edges + 1 == comp.len() {
            vec![centroid(&adj, &alive, &comp, &mut size)]
        } else if by_bags {
            bag_chain(g, &comp)
        } else {
            let mut cand = comp.clone();
            if cand.len() > SCAN_ALL {
                cand.sort_by_key(|&v| (core::cmp::Reverse(degree(v)), v));
                cand.truncate(SCAN_TOP);
            }
            cand.sort_unstable();
            let mut best = (usize::MAX, 0);
            for v in cand {
                best = best.min((largest_part(&adj, &mut alive, &comp, &mut visited, v), v));
            }
            vec![best.1]
        };
        let mut last = up;
        for &v in &chain {
            parent[v] = last;
            alive[v] = false;
            last = Some(v);
        }
        for &v in &comp {
            seen[v] = false;
        }
        for &r in &chain {
            for &w in &adj[r] {
                if alive[w] && !seen[w] {
                    let sub = collect(&adj, &alive, &mut seen, w);
                    stack.push((sub, last));
                }
            }
        }
    }
    EliminationForest::new(parent).expect("splitting yields a forest")
}

/// Vertices of a balanced separator bag of `comp`, highest degree first.
fn bag_chain(g: &Graph, comp: &[Vertex]) -> Vec<Vertex> {
    let (h, _) = g.induced_subgraph(comp);
    let td = heuristic_td(&h);
    let mut bag: Vec<Vertex> = match balanced_separator(&h, &td) {
        Ok(split) if !split.c.is_empty() => split.c,
        _ => vec![0],
    };
    bag.sort_by_key(|&v| (core::cmp::Reverse(h.degree(v)), v));
    bag.into_iter().map(|v| comp[v]).collect()
}

/// Components up to this size try every split vertex; larger ones try
/// the `SCAN_TOP` vertices of largest degree.
const SCAN_ALL: usize = 2048;
const SCAN_TOP: usize = 32;

/// Size of the largest part left in `comp` after deleting `v`.
fn largest_part(adj: &[Vec<Vertex>], alive: &mut [bool], comp: &[Vertex], visited: &mut [bool], v: Vertex) -> usize {
    alive[v] = false;
    let mut best = 0;
    for &s in comp {
        if alive[s] && !visited[s] {
            best = best.max(collect(adj, alive, visited, s).len());
        }
    }
    for &s in comp {
        visited[s] = false;
    }
    alive[v] = true;
    best
}

/// Component of `s` among alive vertices; marks it in `seen`.
fn collect(adj: &[Vec<Vertex>], alive: &[bool], seen: &mut [bool], s: Vertex) -> Vec<Vertex> {
    let mut out = vec![s];
    seen[s] = true;
    let mut head = 0;
    while head < out.len() {
        let v = out[head];
        head += 1;
        for &w in &adj[v] {
            if alive[w] && !seen[w] {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

/// Vertex of the tree `comp` whose removal leaves the smallest largest
/// part (smallest ID on ties).
fn centroid(adj: &[Vec<Vertex>], alive: &[bool], comp: &[Vertex], size: &mut [usize]) -> Vertex {
    let total = comp.len();
    // `comp` is in BFS order from comp[0], so parents precede children.
    let mut up = BTreeMap::new();
    up.insert(comp[0], usize::MAX);
    for &v in comp {
        for &w in &adj[v] {
            if alive[w] && !up.contains_key(&w) {
                up.insert(w, v);
            }
        }
    }
    for &v in comp {
        size[v] = 1;
    }
    for &v in comp.iter().rev() {
        let p = up[&v];
        if p != usize::MAX {
            size[p] += size[v];
        }
    }
    let mut best = (usize::MAX, usize::MAX);
    for &v in comp {
        let mut part = total - size[v];
        for &w in &adj[v] {
            if alive[w] && up[&w] == v {
                part = part.max(size[w]);
            }
        }
        best = best.min((part, v));
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_cycle, gen_star, gen_kary_tree, gen_path, gen_random_connected};

    #[test]
    fn exact_anchor_values() {
        let p3 = treedepth_exact(&gen_path(3).unwrap(), EXACT_LIMIT).unwrap();
        assert_eq!(p3.depth, 2);
        assert_eq!(p3.forest.roots(), vec![1]);
        assert_eq!(treedepth_exact(&gen_complete(3).unwrap(), EXACT_LIMIT).unwrap().depth, 3);
        assert_eq!(treedepth_exact(&gen_path(7).unwrap(), EXACT_LIMIT).unwrap().depth, 3);
        assert_eq!(treedepth_exact(&gen_path(8).unwrap(), EXACT_LIMIT).unwrap().depth, 4);
        assert_eq!(treedepth_exact(&gen_cycle(8).unwrap(), EXACT_LIMIT).unwrap().depth, 4);
        assert_eq!(treedepth_exact(&gen_star(12).unwrap(), EXACT_LIMIT).unwrap().depth, 2);
    }

    #[test]
    fn large_components_fall_back() {
        let g = gen_path(40).unwrap();
        let t = treedepth_exact(&g, EXACT_LIMIT).unwrap();
        assert!(!t.exact);
        assert!(t.forest.validate(&g).is_empty());
    }

    #[test]
    fn heuristic_forests_are_valid_and_shallow_on_trees() {
        let tree = gen_kary_tree(1000, 2).unwrap();
        let f = heuristic_forest(&tree);
        assert!(f.validate(&tree).is_empty());
        assert!(f.height() <= 11, "height {}", f.height());
        assert!(heuristic_forest(&gen_path(3).unwrap()).height() <= 2);
        for seed in 0..5 {
            let g = gen_random_connected(120, 30, seed).unwrap();
            assert!(heuristic_forest(&g).validate(&g).is_empty());
        }
    }

    #[test]
    fn exact_never_exceeds_heuristic() {
        for seed in 0..6 {
            let g = gen_random_connected(14, 6, seed).unwrap();
            let t = treedepth_exact(&g, EXACT_LIMIT).unwrap();
            assert!(t.exact && t.forest.validate(&g).is_empty());
            assert!(t.depth <= heuristic_forest(&g).height());
        }
    }
}
