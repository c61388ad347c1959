//! Roundtrip eccentricities and distance sums by recursive separation.
//!
//! Every recursion node holds a graph whose distances agree with the input
//! graph, a decomposition of it, and the set of *fresh* vertices: those not
//! yet used as a separator above. A pair of fresh vertices is accounted at
//! the first node that separates it (one side each), puts one endpoint in
//! the separator, or reaches the base case. Pairs involving a stale vertex
//! were accounted higher up and are skipped.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::TreeDecomposition;
use crate::engine::BiEngine;
use crate::graph::{dijkstra, DistanceMode, Direction, Graph, Vertex, Weight};
use crate::{Error, Result};

/// A separator bag and the two sides of the remaining vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorSplit {
    pub bag: usize,
    pub c: Vec<Vertex>,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

/// Picks the bag that leaves no component of `g - C` above `n/2` and packs
/// those components into two sides, largest first onto the lighter side.
/// Both sides end up with at most `ceil(2n/3)` vertices.
pub fn balanced_separator(g: &Graph, td: &TreeDecomposition) -> Result<SeparatorSplit> {
    let n = g.n();
    if td.n() != n {
        return Err(Error::InvalidDecomposition(format!("decomposition over {} vertices, graph has {n}", td.n())));
    }
    if n == 0 {
        return Ok(SeparatorSplit { bag: 0, c: Vec::new(), a: Vec::new(), b: Vec::new() });
    }
    let bags = td.bags();
    let adj = td.tree_adjacency();
    // Root at bag 0; BFS order puts parents first.
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; bags.len()];
    parent[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let t = order[head];
        head += 1;
        for &s in &adj[t] {
            if parent[s] == usize::MAX {
                parent[s] = t;
                order.push(s);
            }
        }
    }
    // Each vertex is weighed at its first bag in BFS order, which is the
    // top of its occurrence subtree.
    let mut weight = vec![0usize; bags.len()];
    let mut placed = vec![false; n];
    for &t in &order {
        for &v in &bags[t] {
            if !placed[v] {
                placed[v] = true;
                weight[t] += 1;
            }
        }
    }
    if let Some(v) = placed.iter().position(|&p| !p) {
        return Err(Error::InvalidDecomposition(format!("vertex {v} occurs in no bag")));
    }
    let mut below = weight.clone();
    for &t in order.iter().rev() {
        if t != 0 {
            below[parent[t]] += below[t];
        }
    }
    let mut t = 0;
    loop {
        let heavy = adj[t].iter().copied().find(|&s| parent[s] == t && s != 0 && 2 * below[s] > n);
        match heavy {
            Some(s) => t = s,
            None => break,
        }
    }
    let c = bags[t].clone();
    let mut alive = vec![true; n];
    for &v in &c {
        alive[v] = false;
    }
    let mut comps = g.components_within(&alive);
    comps.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    let (mut a, mut b): (Vec<Vertex>, Vec<Vertex>) = (Vec::new(), Vec::new());
    for comp in comps {
        if a.len() <= b.len() {
            a.extend(comp);
        } else {
            b.extend(comp);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    Ok(SeparatorSplit { bag: t, c, a, b })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DncOptions {
    /// Largest decomposition width accepted; the bi-chromatic engine needs
    /// `2(width + 1) - 1` dimensions.
    pub max_width: usize,
    /// Base case floor: nodes with at most `max(3 * width, base)` vertices
    /// are solved by plain searches.
    pub base: usize,
    /// Counts every accounted pair and compares node distances against the
    /// input graph. Only honored for `n <= AUDIT_LIMIT`.
    pub audit: bool,
}

impl Default for DncOptions {
    fn default() -> Self {
        DncOptions { max_width: 63, base: 32, audit: false }
    }
}

pub const AUDIT_LIMIT: usize = 100;

/// One separated node: its size, separator size and larger side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitRecord {
    pub depth: usize,
    pub n: usize,
    pub c: usize,
    pub larger: usize,
}

impl SplitRecord {
    pub fn balanced(&self) -> bool {
        self.larger <= (2 * self.n).div_ceil(3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DncReport {
    pub ecc: Vec<Weight>,
    pub dsum: Vec<u128>,
    pub splits: Vec<SplitRecord>,
    pub base_cases: usize,
    pub max_depth: usize,
    /// Whether the pair and distance audits ran.
    pub audited: bool,
}

/// Roundtrip eccentricity and distance sum of every vertex.
pub fn dnc_roundtrip(g: &Graph, td: &TreeDecomposition, opts: DncOptions) -> Result<DncReport> {
    let n = g.n();
    g.ensure_strongly_connected()?;
    let violations = td.validate(g);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidDecomposition(format!("{} violation(s), first {v:?}", violations.len())));
    }
    if td.width() > opts.max_width {
        return Err(Error::Cap { what: "decomposition width", value: td.width(), cap: opts.max_width });
    }
    let audit = opts.audit && n <= AUDIT_LIMIT;
    let mut run = Run {
        report: DncReport { ecc: vec![0; n], dsum: vec![0; n], audited: audit, ..Default::default() },
        base: opts.base.max(3 * td.width()),
        depth_limit: 2 + log_three_halves(n),
        pairs: if audit { vec![0; n * n] } else { Vec::new() },
        truth: if audit { Some(crate::graph::oracle_all_pairs(g)?) } else { None },
    };
    let arcs = (0..n).flat_map(|u| g.out_arcs(u).iter().map(move |&(v, w)| (u, v, w)));
    let h = Graph::from_arcs(n, arcs.collect::<Vec<_>>(), true, true)?;
    run.node(h, td.clone(), (0..n).collect(), vec![true; n], 0)?;
    if audit {
        for u in 0..n {
            for v in u + 1..n {
                let k = run.pairs[u * n + v];
                if k != 1 {
                    return Err(Error::Internal(format!("pair {{{u},{v}}} accounted {k} times")));
                }
            }
        }
    }
    Ok(run.report)
}

/// `floor(log_{3/2}(n))` by repeated multiplication.
fn log_three_halves(n: usize) -> usize {
    let (mut k, mut x) = (0, 1u128);
    while x * 3 <= n as u128 * 2u128.pow(k as u32 + 1) {
        k += 1;
        x *= 3;
        if k >= 200 {
            break;
        }
    }
    k
}

struct Run {
    report: DncReport,
    base: usize,
    depth_limit: usize,
    pairs: Vec<u32>,
    truth: Option<crate::graph::DistanceMatrix>,
}

impl Run {
    /// Adds the roundtrip distance `d` of the pair `{x, y}` (local IDs mapped
    /// through `orig`) to `x` and, when `both`, to `y`.
    fn account(&mut self, x: Vertex, y: Vertex, d: Weight, both: bool) {
        for (p, on) in [(x, true), (y, both)] {
            if on {
                self.report.ecc[p] = self.report.ecc[p].max(d);
                self.report.dsum[p] += d as u128;
            }
        }
    }

    fn count_pair(&mut self, x: Vertex, y: Vertex) {
        if !self.pairs.is_empty() {
            let n = self.report.ecc.len();
            let (lo, hi) = (x.min(y), x.max(y));
            self.pairs[lo * n + hi] += 1;
        }
    }

    fn check_distances(&self, orig: &[Vertex], rows: &[(Vertex, Vec<Weight>)]) -> Result<()> {
        let Some(truth) = &self.truth else { return Ok(()) };
        for (x, row) in rows {
            for (y, &d) in row.iter().enumerate() {
                if d != truth.get(orig[*x], orig[y]) {
                    return Err(Error::Internal(format!(
                        "node distance {}->{} is {d}, expected {}",
                        orig[*x],
                        orig[y],
                        truth.get(orig[*x], orig[y])
                    )));
                }
            }
        }
        Ok(())
    }

    fn node(&mut self, h: Graph, td: TreeDecomposition, orig: Vec<Vertex>, fresh: Vec<bool>, depth: usize) -> Result<()> {
        if depth > self.depth_limit {
            return Err(Error::Internal(format!("recursion depth {depth} exceeds {}", self.depth_limit)));
        }
        self.report.max_depth = self.report.max_depth.max(depth);
        let m = h.n();
        if m <= self.base {
            return self.base_case(&h, &orig, &fresh);
        }
        let split = balanced_separator(&h, &td)?;
        let record = SplitRecord { depth, n: m, c: split.c.len(), larger: split.a.len().max(split.b.len()) };
        if !record.balanced() || split.c.is_empty() {
            return Err(Error::Internal(format!("unbalanced separator {record:?}")));
        }
        self.report.splits.push(record);
        let mut side = vec![0u8; m];
        for &v in &split.a {
            side[v] = 1;
        }
        for &v in &split.b {
            side[v] = 2;
        }
        for &v in &split.a {
            if h.neighbors(v).iter().any(|&w| side[w] == 2) {
                return Err(Error::Internal(format!("vertex {} touches both sides of the separator", orig[v])));
            }
        }

        // Pairs with a fresh separator vertex, straight from its searches.
        let mut from = Vec::with_capacity(split.c.len());
        let mut to = Vec::with_capacity(split.c.len());
        for &c in &split.c {
            from.push(dijkstra(&h, c, Direction::Out)?);
            to.push(dijkstra(&h, c, Direction::In)?);
        }
        if self.truth.is_some() {
            let rows: Vec<(Vertex, Vec<Weight>)> = split.c.iter().copied().zip(from.iter().cloned()).collect();
            self.check_distances(&orig, &rows)?;
        }
        let in_c: Vec<bool> = (0..m).map(|v| side[v] == 0).collect();
        for (i, &c) in split.c.iter().enumerate() {
            if !fresh[c] {
                continue;
            }
            for w in 0..m {
                if w == c || !fresh[w] {
                    continue;
                }
                let d = from[i][w] + to[i][w];
                // A fresh separator partner accounts the pair from its own row.
                let both = !in_c[w];
                self.account(orig[c], orig[w], d, both);
                if both || c < w {
                    self.count_pair(orig[c], orig[w]);
                }
            }
        }

        // Fresh A x fresh B through the bi-chromatic engine.
        let fa: Vec<Vertex> = split.a.iter().copied().filter(|&v| fresh[v]).collect();
        let fb: Vec<Vertex> = split.b.iter().copied().filter(|&v| fresh[v]).collect();
        if !fa.is_empty() && !fb.is_empty() {
            let engine = BiEngine::build(&split.c, from.clone(), to.clone(), &fa, &fb, &[DistanceMode::Roundtrip])?;
            for &v in fa.iter().chain(&fb) {
                let q = engine.query_bi(v, &[DistanceMode::Roundtrip])?.remove(0);
                let other = if side[v] == 1 { fb.len() } else { fa.len() };
                if q.reached != other as u64 {
                    return Err(Error::Internal(format!("vertex {} reached {} of {other} across", orig[v], q.reached)));
                }
                if let Some((e, _)) = q.ecc {
                    let p = orig[v];
                    self.report.ecc[p] = self.report.ecc[p].max(e);
                }
                self.report.dsum[orig[v]] += q.dsum;
            }
            if !self.pairs.is_empty() {
                for &x in &fa {
                    for &y in &fb {
                        self.count_pair(orig[x], orig[y]);
                    }
                }
            }
        }

        // Children on A + C and B + C with separator shortcuts.
        let mut shortcuts = Vec::new();
        for (i, &c) in split.c.iter().enumerate() {
            for &c2 in &split.c {
                if c != c2 {
                    shortcuts.push((c, c2, from[i][c2]));
                }
            }
        }
        drop(from);
        drop(to);
        for part in [&split.a, &split.b] {
            if part.is_empty() {
                continue;
            }
            let mut keep: Vec<Vertex> = part.iter().chain(&split.c).copied().collect();
            keep.sort_unstable();
            let mut local = vec![usize::MAX; m];
            for (i, &v) in keep.iter().enumerate() {
                local[v] = i;
            }
            let arcs = keep
                .iter()
                .flat_map(|&v| h.out_arcs(v).iter().map(move |&(w, wt)| (v, w, wt)))
                .chain(shortcuts.iter().copied())
                .filter(|&(v, w, _)| local[v] != usize::MAX && local[w] != usize::MAX)
                .map(|(v, w, wt)| (local[v], local[w], wt));
            let child = Graph::from_arcs(keep.len(), arcs.collect::<Vec<_>>(), true, true)?;
            let bags: Vec<Vec<Vertex>> = td
                .bags()
                .iter()
                .map(|bag| bag.iter().filter(|&&v| local[v] != usize::MAX).map(|&v| local[v]).collect())
                .collect();
            let child_td = TreeDecomposition::new(keep.len(), bags, td.edges().to_vec())?;
            let child_orig = keep.iter().map(|&v| orig[v]).collect();
            let child_fresh = keep.iter().map(|&v| fresh[v] && !in_c[v]).collect();
            self.node(child, child_td, child_orig, child_fresh, depth + 1)?;
        }
        Ok(())
    }

    fn base_case(&mut self, h: &Graph, orig: &[Vertex], fresh: &[bool]) -> Result<()> {
        self.report.base_cases += 1;
        let m = h.n();
        let mut rows = Vec::new();
        for u in (0..m).filter(|&u| fresh[u]) {
            let out = dijkstra(h, u, Direction::Out)?;
            let inn = dijkstra(h, u, Direction::In)?;
            for v in (0..m).filter(|&v| v != u && fresh[v]) {
                self.account(orig[u], orig[v], out[v] + inn[v], false);
                if u < v {
                    self.count_pair(orig[u], orig[v]);
                }
            }
            if self.truth.is_some() {
                rows.push((u, out));
            }
        }
        self.check_distances(orig, &rows)
    }
}
