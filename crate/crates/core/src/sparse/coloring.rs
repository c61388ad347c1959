//! Low tree-depth colorings: any `i <= k` color classes together induce a
//! subgraph of tree-depth at most `i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{treedepth_exact, EliminationForest, EXACT_LIMIT};
use crate::graph::{rng, Graph, Vertex};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowTDColoring {
    colors: Vec<usize>,
    count: usize,
    /// Forest whose depth classes are the colors, when known.
    forest: Option<EliminationForest>,
}

impl LowTDColoring {
    /// Colors are `0..count`; every color in range must be used or not,
    /// `count` is one more than the largest.
    pub fn new(colors: Vec<usize>) -> Self {
        let count = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        LowTDColoring { colors, count, forest: None }
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn forest(&self) -> Option<&EliminationForest> {
        self.forest.as_ref()
    }

    /// Vertices whose color is in `classes`, ascending.
    pub fn members(&self, classes: &[usize]) -> Vec<Vertex> {
        let mut pick = vec![false; self.count];
        for &c in classes {
            if c < self.count {
                pick[c] = true;
            }
        }
        (0..self.n()).filter(|&v| pick[self.colors[v]]).collect()
    }
}

/// Colors every vertex by its depth in `forest` (roots get color 0). Any
/// `i` depth classes induce a subgraph whose restricted forest has height
/// at most `i`.
pub fn depth_coloring(forest: &EliminationForest) -> LowTDColoring {
    let colors = (0..forest.n()).map(|v| forest.depth(v) - 1).collect();
    LowTDColoring { forest: Some(forest.clone()), ..LowTDColoring::new(colors) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Exact tree-depth limit per component.
    pub limit: usize,
    /// Above this many class subsets, a random sample of this size is checked.
    pub max_subsets: usize,
    pub seed: u64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { limit: EXACT_LIMIT, max_subsets: 4096, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColoringReport {
    /// Class subsets whose union has tree-depth above their size, with that
    /// tree-depth.
    pub violations: Vec<(Vec<usize>, usize)>,
    pub subsets_checked: usize,
    /// Subsets whose union had a component too large to decide exactly and
    /// a heuristic forest that was too tall.
    pub undecided: usize,
    /// True when subsets were sampled instead of enumerated.
    pub sampled: bool,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.undecided == 0
    }
}

/// Checks every union of at most `k` classes (or a seeded sample of them).
pub fn validate_low_td_coloring(
    g: &Graph,
    coloring: &LowTDColoring,
    k: usize,
    opts: ValidateOptions,
) -> Result<ColoringReport> {
    if coloring.n() != g.n() {
        return Err(Error::InvalidColoring(format!("{} colors for {} vertices", coloring.n(), g.n())));
    }
    let c = coloring.count();
    let top = k.min(c);
    let total: u128 = (1..=top).map(|i| binomial(c, i)).sum();
    let mut report = ColoringReport::default();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    if total > opts.max_subsets as u128 {
        report.sampled = true;
        let mut r = rng(opts.seed);
        for _ in 0..opts.max_subsets {
            let i = r.gen_range(1..=top);
            let mut pick = rand::seq::index::sample(&mut r, c, i).into_vec();
            pick.sort_unstable();
            subsets.push(pick);
        }
    } else {
        for i in 1..=top {
            subsets.extend(Combinations::new(c, i));
        }
    }
    for classes in subsets {
        let members = coloring.members(&classes);
        report.subsets_checked += 1;
        if members.is_empty() {
            continue;
        }
        // The forest the coloring came from, restricted to the union, is a
        // certificate when it is low enough.
        if let Some(f) = coloring.forest() {
            let mut mask = vec![false; g.n()];
            for &v in &members {
                mask[v] = true;
            }
            if f.restrict(&mask).height() <= classes.len() {
                continue;
            }
        }
        let (h, _) = g.induced_subgraph(&members);
        let t = treedepth_exact(&h, opts.limit)?;
        if t.depth > classes.len() {
            if t.exact {
                report.violations.push((classes, t.depth));
            } else {
                report.undecided += 1;
            }
        }
    }
    Ok(report)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}
