//! Placement discovery for points whose hub IDs form a single sorted block
//! at the front.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::engine::{apply_choice, Discovery, Search, Shared, Step};
use crate::graph::Vertex;
use crate::labeling::Label;
use crate::range::{ClosedBox, RangeTree};

/// Targets with `i` hubs each.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub i: usize,
    pub members: Vec<usize>,
    /// Distinct hub lists with multiplicities; empty under search discovery.
    pub groups: Vec<(Vec<Vertex>, u64)>,
}

impl Block {
    pub fn new(i: usize, members: Vec<usize>, labels: &[Label], discovery: Discovery) -> Self {
        let mut groups: BTreeMap<Vec<Vertex>, u64> = BTreeMap::new();
        if discovery == Discovery::Grouping {
            for &v in &members {
                *groups.entry(labels[v].iter().map(|e| e.0).collect()).or_insert(0) += 1;
            }
        }
        Block { i, members, groups: groups.into_iter().collect() }
    }
}

/// A realized placement of the source lists: the base box, the hubs each
/// source shares with the targets in it, and how many targets realize it.
#[derive(Debug, Clone)]
pub(crate) struct Placement {
    pub base: ClosedBox,
    pub shared: Vec<Vec<Shared>>,
    pub count: u64,
}

/// Resolves `Auto` the same way the eccentricity engine does.
pub(crate) fn resolve(discovery: Discovery, n: usize, k: usize) -> Discovery {
    match discovery {
        Discovery::Auto => {
            let blowup = 4u128.checked_pow(k as u32).unwrap_or(u128::MAX);
            if (n as u128) < blowup {
                Discovery::Grouping
            } else {
                Discovery::Search
            }
        }
        d => d,
    }
}

/// All placements of `sources` realized by some target of `block`. `probe`
/// must hold one point per member; `dim` is the dimension of the boxes.
pub(crate) fn placements(
    block: &Block,
    sources: &[&Label],
    dim: usize,
    probe: &RangeTree,
    discovery: Discovery,
) -> Vec<Placement> {
    let keys: Vec<(Vec<u32>, u64)> = if discovery == Discovery::Search {
        let steps: Vec<Step> = sources
            .iter()
            .enumerate()
            .flat_map(|(list, l)| l.iter().map(move |e| Step { hub: e.0, offset: 0, width: block.i, list }))
            .collect();
        let mut key = Vec::with_capacity(steps.len());
        let mut leaves = Vec::new();
        let mut search = Search { steps: &steps, probe, key: &mut key, leaves: &mut leaves };
        search.dfs(0, 0, ClosedBox::full(dim), block.members.len() as u64);
        leaves
    } else {
        let mut found: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (hubs, c) in &block.groups {
            let key = sources
                .iter()
                .flat_map(|l| l.iter())
                .map(|&(z, _)| {
                    let g = hubs.partition_point(|&h| h < z);
                    2 * g as u32 + u32::from(hubs.get(g) == Some(&z))
                })
                .collect();
            *found.entry(key).or_insert(0) += c;
        }
        found.into_iter().collect()
    };
    keys.into_iter()
        .map(|(key, count)| {
            let mut base = ClosedBox::full(dim);
            let mut shared = Vec::with_capacity(sources.len());
            let mut codes = key.iter();
            for l in sources {
                let mut xs = Vec::new();
                for &(z, d) in l.iter() {
                    let code = *codes.next().expect("one code per source hub");
                    let (g, inside) = ((code / 2) as usize, code % 2 == 1);
                    apply_choice(&mut base, 0, block.i, z as i64, g, inside);
                    if inside {
                        xs.push(Shared { pos: g, dist: d as i64 });
                    }
                }
                shared.push(xs);
            }
            Placement { base, shared, count }
        })
        .collect()
}

/// Hub IDs then, for each `s` in `anchors`, the differences
/// `d(q_r, v) - d(q_s, v)` for `r != s` in ascending `r`.
pub(crate) fn push_point(label: &Label, anchors: &[usize], out: &mut Vec<i64>) {
    out.extend(label.iter().map(|e| e.0 as i64));
    for &s in anchors {
        let ds = label[s].1 as i64;
        out.extend(label.iter().enumerate().filter(|&(r, _)| r != s).map(|(_, e)| e.1 as i64 - ds));
    }
}
