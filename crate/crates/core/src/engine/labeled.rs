use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::eval::{evaluate, Accumulator, Layout, Shared, CHANNELS};
use super::{Discovery, EngineOptions, QueryResult};
use crate::graph::{diameter_of, median_of, radius_of, DistanceMode, Graph, Vertex, Weight};
use crate::labeling::{HubLabeling, Label};
use crate::range::{ClosedBox, RangeTree};
use crate::{Error, Result};

/// Targets sharing the label sizes `(i, j)` with their range trees.
#[derive(Debug, Clone)]
struct Bucket {
    i: usize,
    j: usize,
    /// Number of `t` values with a tree (1 in fast-source mode).
    tj: usize,
    /// `trees[s * tj + t]` holds `p(v,s,t)` for every member `v`.
    trees: Vec<RangeTree>,
    /// Distinct (in-hub list, out-hub list) pairs with multiplicities.
    groups: Vec<(Vec<Vertex>, Vec<Vertex>, u64)>,
    members: usize,
}

impl Bucket {
    fn dim(&self) -> usize {
        2 * (self.i + self.j) - 1
    }

    fn layout(&self) -> Layout {
        let (i, j) = (self.i, self.j);
        Layout { diff_x: i + j, diff_y: 2 * i + j - 1, last: 2 * (i + j) - 2 }
    }
}

/// One realized configuration: the box fixing how the source's hubs sit
/// among a target's hubs, the shared hubs and the number of such targets.
#[derive(Debug, Clone)]
struct Config {
    base: ClosedBox,
    xs: Vec<Shared>,
    ys: Vec<Shared>,
    count: u64,
}

/// Appends the coordinates of `p(v,s,t)`.
fn push_point(lin: &Label, lout: &Label, s: usize, t: usize, out: &mut Vec<i64>) {
    out.extend(lin.iter().map(|e| e.0 as i64));
    out.extend(lout.iter().map(|e| e.0 as i64));
    let ds = lin[s].1 as i64;
    out.extend(lin.iter().enumerate().filter(|&(r, _)| r != s).map(|(_, e)| e.1 as i64 - ds));
    let dt = lout[t].1 as i64;
    out.extend(lout.iter().enumerate().filter(|&(r, _)| r != t).map(|(_, e)| e.1 as i64 - dt));
    out.push(ds - dt);
}

/// Eccentricity and distance-sum queries for all four distance modes over a
/// hub labeling, answered by range queries over per-target points.
#[derive(Debug, Clone)]
pub struct Engine {
    labels: HubLabeling,
    modes: Vec<DistanceMode>,
    options: EngineOptions,
    discovery: Discovery,
    buckets: Vec<Bucket>,
}

impl Engine {
    pub fn build(g: &Graph, l: &HubLabeling, modes: &[DistanceMode], options: EngineOptions) -> Result<Self> {
        if g.n() != l.n() {
            return Err(Error::InvalidLabeling(format!(
                "labeling has {} vertices, graph has {}",
                l.n(),
                g.n()
            )));
        }
        Self::from_labeling(l, modes, options)
    }

    /// Builds without a graph; only the labeling is consulted.
    pub fn from_labeling(l: &HubLabeling, modes: &[DistanceMode], options: EngineOptions) -> Result<Self> {
        let k = l.max_label_size();
        if k > options.cap {
            return Err(Error::LabelCap { k, cap: options.cap });
        }
        if options.fast_source && modes.iter().any(|&m| m != DistanceMode::Source) {
            return Err(Error::InvalidParameters("fast-source engines answer only the source mode".into()));
        }
        let mut modes = modes.to_vec();
        modes.sort_unstable();
        modes.dedup();
        let n = l.n();
        let discovery = match options.discovery {
            Discovery::Auto => {
                let blowup = 4u128.checked_pow(k as u32).unwrap_or(u128::MAX);
                if (n as u128) < blowup {
                    Discovery::Grouping
                } else {
                    Discovery::Search
                }
            }
            d => d,
        };
        let mut by_size: BTreeMap<(usize, usize), Vec<Vertex>> = BTreeMap::new();
        for v in 0..n {
            by_size.entry((l.in_label(v).len(), l.out_label(v).len())).or_default().push(v);
        }
        let mut buckets = Vec::with_capacity(by_size.len());
        for ((i, j), members) in by_size {
            let tj = if options.fast_source { 1 } else { j };
            let d = 2 * (i + j) - 1;
            let mut trees = Vec::with_capacity(i * tj);
            for s in 0..i {
                for t in 0..tj {
                    let mut coords = Vec::with_capacity(members.len() * d);
                    let mut values = Vec::with_capacity(members.len() * CHANNELS);
                    for &v in &members {
                        let (lin, lout) = (l.in_label(v), l.out_label(v));
                        push_point(lin, lout, s, t, &mut coords);
                        let (f0, f1) = (lin[s].1 as i64, lout[t].1 as i64);
                        values.extend([f0, f1, f0 + f1]);
                    }
                    trees.push(RangeTree::from_flat(d, CHANNELS, coords, members.clone(), values, None)?);
                }
            }
            let mut groups: BTreeMap<(Vec<Vertex>, Vec<Vertex>), u64> = BTreeMap::new();
            if discovery == Discovery::Grouping {
                for &v in &members {
                    let hubs = |lab: &Label| lab.iter().map(|e| e.0).collect::<Vec<_>>();
                    *groups.entry((hubs(l.in_label(v)), hubs(l.out_label(v)))).or_insert(0) += 1;
                }
            }
            buckets.push(Bucket {
                i,
                j,
                tj,
                trees,
                groups: groups.into_iter().map(|((a, b), c)| (a, b, c)).collect(),
                members: members.len(),
            });
        }
        Ok(Engine { labels: l.clone(), modes, options, discovery, buckets })
    }

    pub fn n(&self) -> usize {
        self.labels.n()
    }

    pub fn labeling(&self) -> &HubLabeling {
        &self.labels
    }

    pub fn modes(&self) -> &[DistanceMode] {
        &self.modes
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    /// The discovery strategy in use after resolving `Auto`.
    pub fn discovery(&self) -> Discovery {
        self.discovery
    }

    /// Total number of stored points over all trees.
    pub fn point_count(&self) -> usize {
        self.buckets.iter().map(|b| b.trees.iter().map(RangeTree::len).sum::<usize>()).sum()
    }

    pub fn tree_count(&self) -> usize {
        self.buckets.iter().map(|b| b.trees.len()).sum()
    }

    fn check_source(&self, u: Vertex) -> Result<()> {
        if u >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n() });
        }
        Ok(())
    }

    fn split(&self) -> bool {
        !self.options.fast_source
    }

    /// Configurations realized by at least one target of `bucket`, found by
    /// grouping the targets' hub lists.
    fn configs_by_grouping(&self, b: &Bucket, u: Vertex) -> Vec<Config> {
        let (uo, ui) = (self.labels.out_label(u), self.labels.in_label(u));
        let split = self.split();
        let mut found: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut key = Vec::with_capacity(uo.len() + ui.len());
        for (lin, lout, c) in &b.groups {
            key.clear();
            for &(z, _) in uo {
                let g = lin.partition_point(|&h| h < z);
                key.push(2 * g as u32 + u32::from(lin.get(g) == Some(&z)));
            }
            if split {
                for &(z, _) in ui {
                    let g = lout.partition_point(|&h| h < z);
                    key.push(2 * g as u32 + u32::from(lout.get(g) == Some(&z)));
                }
            }
            *found.entry(key.clone()).or_insert(0) += c;
        }
        found.into_iter().map(|(key, count)| self.config_from_key(b, u, &key, count)).collect()
    }

    fn config_from_key(&self, b: &Bucket, u: Vertex, key: &[u32], count: u64) -> Config {
        let (uo, ui) = (self.labels.out_label(u), self.labels.in_label(u));
        let mut base = ClosedBox::full(b.dim());
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (m, &code) in key.iter().enumerate() {
            let (g, inside) = ((code / 2) as usize, code % 2 == 1);
            let (z, dz, offset, width, list) = if m < uo.len() {
                (uo[m].0, uo[m].1, 0, b.i, &mut xs)
            } else {
                let e = ui[m - uo.len()];
                (e.0, e.1, b.i, b.j, &mut ys)
            };
            apply_choice(&mut base, offset, width, z as i64, g, inside);
            if inside {
                list.push(Shared { pos: g, dist: dz as i64 });
            }
        }
        Config { base, xs, ys, count }
    }

    /// Configurations found by a depth-first search over placements of the
    /// source's hubs, pruning placements whose box holds no target.
    fn configs_by_search(&self, b: &Bucket, u: Vertex) -> Vec<Config> {
        let (uo, ui) = (self.labels.out_label(u), self.labels.in_label(u));
        let mut steps: Vec<Step> = uo.iter().map(|e| Step { hub: e.0, offset: 0, width: b.i, list: 0 }).collect();
        if self.split() {
            steps.extend(ui.iter().map(|e| Step { hub: e.0, offset: b.i, width: b.j, list: 1 }));
        }
        let mut out = Vec::new();
        let mut key = Vec::with_capacity(steps.len());
        let probe = &b.trees[0];
        let mut search = Search { steps: &steps, probe, key: &mut key, leaves: &mut out };
        search.dfs(0, 0, ClosedBox::full(b.dim()), b.members as u64);
        out.into_iter().map(|(key, count)| self.config_from_key(b, u, &key, count)).collect()
    }

    fn configs(&self, b: &Bucket, u: Vertex) -> Vec<Config> {
        match self.discovery {
            Discovery::Search => self.configs_by_search(b, u),
            _ => self.configs_by_grouping(b, u),
        }
    }

    fn run(&self, u: Vertex, modes: &[DistanceMode]) -> Result<Accumulator> {
        self.check_source(u)?;
        if let Some(&m) = modes.iter().find(|m| !self.modes.contains(m)) {
            return Err(Error::InvalidParameters(format!("engine was not built for mode {m}")));
        }
        let mut acc = Accumulator::new(modes);
        for b in &self.buckets {
            let layout = b.layout();
            for cfg in self.configs(b, u) {
                evaluate(
                    &cfg.base,
                    &cfg.xs,
                    &cfg.ys,
                    layout,
                    self.split(),
                    Some(cfg.count),
                    |s, t| &b.trees[s * b.tj + t],
                    &mut acc,
                );
            }
        }
        Ok(acc)
    }

    /// Eccentricity, witness and distance-sum of `u` for each mode in `modes`,
    /// from a single pass over the boxes.
    pub fn query_modes(&self, u: Vertex, modes: &[DistanceMode]) -> Result<Vec<QueryResult>> {
        let acc = self.run(u, modes)?;
        acc.modes
            .iter()
            .map(|&(mode, m)| QueryResult::from_acc(mode, m, acc.matched, acc.boxes))
            .collect()
    }

    pub fn query(&self, u: Vertex, mode: DistanceMode) -> Result<QueryResult> {
        Ok(self.query_modes(u, &[mode])?.remove(0))
    }

    /// `(e(u), witness)`; `None` only when no target is reachable under the
    /// label estimate.
    pub fn ecc(&self, u: Vertex, mode: DistanceMode) -> Result<(Weight, Vertex)> {
        let r = self.query(u, mode)?;
        r.ecc.ok_or(Error::Internal(format!("no target of {u} is covered by the labeling")))
    }

    pub fn dsum(&self, u: Vertex, mode: DistanceMode) -> Result<u128> {
        Ok(self.query(u, mode)?.dsum)
    }

    /// Sum of box counts for `u`: `n` exactly when every target is matched
    /// by one box.
    pub fn partition_count(&self, u: Vertex) -> Result<u64> {
        Ok(self.run(u, &[self.modes[0]])?.matched)
    }

    pub fn all_ecc(&self, mode: DistanceMode) -> Result<Vec<Weight>> {
        (0..self.n()).map(|u| self.ecc(u, mode).map(|e| e.0)).collect()
    }

    pub fn all_dsum(&self, mode: DistanceMode) -> Result<Vec<u128>> {
        (0..self.n()).map(|u| self.dsum(u, mode)).collect()
    }

    pub fn diameter(&self, mode: DistanceMode) -> Result<(Weight, Vertex)> {
        diameter_of(&self.all_ecc(mode)?).ok_or(Error::InvalidParameters("empty graph".into()))
    }

    pub fn radius(&self, mode: DistanceMode) -> Result<(Weight, Vertex)> {
        radius_of(&self.all_ecc(mode)?).ok_or(Error::InvalidParameters("empty graph".into()))
    }

    pub fn median(&self, mode: DistanceMode) -> Result<Vec<Vertex>> {
        Ok(median_of(&self.all_dsum(mode)?))
    }

    pub fn wiener(&self, mode: DistanceMode) -> Result<u128> {
        Ok(self.all_dsum(mode)?.iter().sum())
    }
}

/// Constrains the hub block starting at `offset` (of `width` sorted hub IDs)
/// so that `z` sits at index `g` (`inside`) or falls strictly between
/// indices `g - 1` and `g`.
pub(crate) fn apply_choice(b: &mut ClosedBox, offset: usize, width: usize, z: i64, g: usize, inside: bool) {
    if inside {
        b.restrict(offset + g, z, z);
    } else {
        if g > 0 {
            b.less(offset + g - 1, z);
        }
        if g < width {
            b.greater(offset + g, z);
        }
    }
}

/// One source hub to place within a sorted hub block of a target point.
/// Placements are monotone within a source list.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub hub: Vertex,
    pub offset: usize,
    pub width: usize,
    pub list: usize,
}

/// Depth-first placement search; every leaf is a placement key with the
/// number of points of `probe` realizing it.
pub(crate) struct Search<'a> {
    pub steps: &'a [Step],
    pub probe: &'a RangeTree,
    pub key: &'a mut Vec<u32>,
    pub leaves: &'a mut Vec<(Vec<u32>, u64)>,
}

impl Search<'_> {
    pub fn dfs(&mut self, step: usize, min_g: usize, b: ClosedBox, count: u64) {
        if step == self.steps.len() {
            self.leaves.push((self.key.clone(), count));
            return;
        }
        let Step { hub: z, offset, width, list } = self.steps[step];
        let min_g = if step > 0 && self.steps[step - 1].list != list { 0 } else { min_g };
        let mut covered = 0;
        for g in min_g..=width {
            for inside in [false, true] {
                if inside && g == width {
                    continue;
                }
                let mut child = b.clone();
                apply_choice(&mut child, offset, width, z as i64, g, inside);
                let c = self.probe.count_into(&child);
                if c > 0 {
                    self.key.push(2 * g as u32 + u32::from(inside));
                    self.dfs(step + 1, g + usize::from(inside), child, c);
                    self.key.pop();
                    covered += c;
                    if covered == count {
                        return;
                    }
                }
            }
        }
    }
}

/// Label-induced all-pairs scan: `est(u,v)` combined under `mode`, the
/// reference the engine must reproduce for any labeling.
pub fn estimate_ecc_dsum(l: &HubLabeling, u: Vertex, mode: DistanceMode) -> (Option<(Weight, Vertex)>, u128, u64) {
    let mut best: Option<(Weight, Vertex)> = None;
    let (mut sum, mut count) = (0u128, 0u64);
    for v in 0..l.n() {
        let (a, b) = (l.est(u, v), l.est(v, u));
        let inf = crate::graph::INFINITY;
        let val = match mode {
            DistanceMode::Source => (a != inf).then_some(a as u128),
            DistanceMode::Min => (a != inf || b != inf).then(|| a.min(b) as u128),
            DistanceMode::Max => (a != inf && b != inf).then(|| a.max(b) as u128),
            DistanceMode::Roundtrip => (a != inf && b != inf).then(|| a as u128 + b as u128),
        };
        if let Some(x) = val {
            let x = x as Weight;
            if best.is_none_or(|(bv, _)| x > bv) {
                best = Some((x, v));
            }
            sum += x as u128;
            count += 1;
        }
    }
    (best, sum, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_path, gen_star, oracle_all_pairs, DistanceMode::*};
    use crate::labeling::{build_pruned, Flavor};
    use alloc::vec;

    fn three_cycle() -> (Graph, HubLabeling) {
        let g = Graph::directed(3, &[(0, 1, 1), (1, 2, 2), (2, 0, 3)]).unwrap();
        let l = HubLabeling::full(&oracle_all_pairs(&g).unwrap()).unwrap();
        (g, l)
    }

    #[test]
    fn three_cycle_values() {
        let (g, l) = three_cycle();
        let e = Engine::build(&g, &l, &DistanceMode::ALL, EngineOptions::default()).unwrap();
        assert_eq!(e.ecc(0, Source).unwrap(), (3, 2));
        assert_eq!(e.ecc(0, Roundtrip).unwrap().0, 6);
        assert_eq!(e.dsum(0, Source).unwrap(), 4);
        assert_eq!(e.dsum(0, Roundtrip).unwrap(), 12);
        assert_eq!(e.diameter(Roundtrip).unwrap().0, 6);
        assert_eq!(e.radius(Roundtrip).unwrap().0, 6);
        for u in 0..3 {
            assert_eq!(e.partition_count(u).unwrap(), 3);
        }
    }

    #[test]
    fn path_and_star_statistics() {
        let g = gen_path(3).unwrap();
        let labels = vec![vec![(0, 0), (1, 1)], vec![(1, 0)], vec![(1, 1), (2, 0)]];
        let l = HubLabeling::new(labels.clone(), labels, Flavor::Exact).unwrap();
        let e = Engine::build(&g, &l, &[Source], EngineOptions::default()).unwrap();
        assert_eq!(e.diameter(Source).unwrap().0, 2);
        assert_eq!(e.radius(Source).unwrap(), (1, 1));
        assert_eq!(e.median(Source).unwrap(), vec![1]);
        assert_eq!(e.wiener(Source).unwrap(), 8);
        let bucket = e.buckets.iter().find(|b| (b.i, b.j) == (2, 2)).unwrap();
        assert_eq!(bucket.trees.len(), 4);
        assert!(bucket.trees.iter().all(|t| t.len() == 2));

        let star = gen_star(5).unwrap();
        let e = Engine::build(&star, &build_pruned(&star).unwrap(), &[Source], EngineOptions::default()).unwrap();
        assert_eq!(e.median(Source).unwrap(), vec![0]);
    }

    #[test]
    fn single_vertex_point_has_dimension_three() {
        let g = gen_path(1).unwrap();
        let l = build_pruned(&g).unwrap();
        let e = Engine::build(&g, &l, &[Max], EngineOptions::default()).unwrap();
        assert_eq!(e.buckets[0].dim(), 3);
        assert_eq!(e.ecc(0, Max).unwrap(), (0, 0));
    }

    #[test]
    fn label_cap_is_enforced() {
        let g = crate::graph::gen_complete(13).unwrap();
        let l = HubLabeling::full(&oracle_all_pairs(&g).unwrap()).unwrap();
        assert!(matches!(
            Engine::build(&g, &l, &[Source], EngineOptions::default()),
            Err(Error::LabelCap { k: 13, cap: 12 })
        ));
    }
}
