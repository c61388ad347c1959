//! Hub labelings: per-vertex in/out hub lists sorted by hub ID.

mod build;
mod ops;

pub use build::{build_elimination, build_pruned, build_split};
pub use ops::{concat, tighten};
pub(crate) use ops::merge;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::graph::{self, dijkstra, Direction, Graph, Vertex, Weight, INFINITY};
use crate::{Error, Result};

/// One label: `(hub, distance)` pairs with strictly increasing hubs.
pub type Label = Vec<(Vertex, Weight)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Every stored distance is the true graph distance.
    Exact,
    /// Stored distances may overestimate.
    Admissible,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Exact => "exact",
            Flavor::Admissible => "admissible",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Flavor::Exact),
            "admissible" => Ok(Flavor::Admissible),
            other => Err(Error::InvalidLabeling(format!("unknown flavor '{other}'"))),
        }
    }
}

/// `L+(v)` holds `(x, dist(v,x))`, `L-(v)` holds `(x, dist(x,v))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubLabeling {
    out_labels: Vec<Label>,
    in_labels: Vec<Label>,
    flavor: Flavor,
}

fn check_label(v: Vertex, n: usize, label: &Label, side: &str) -> Result<()> {
    let mut has_self = false;
    for (i, &(h, d)) in label.iter().enumerate() {
        if h >= n {
            return Err(Error::InvalidLabeling(format!("{side} label of {v}: hub {h} out of range")));
        }
        if i > 0 && label[i - 1].0 >= h {
            return Err(Error::InvalidLabeling(format!(
                "{side} label of {v}: hubs not strictly increasing"
            )));
        }
        if d >= graph::DISTANCE_BOUND {
            return Err(Error::InvalidLabeling(format!(
                "{side} label of {v}: distance {d} to hub {h} is not below 2^62"
            )));
        }
        if h == v {
            if d != 0 {
                return Err(Error::InvalidLabeling(format!(
                    "{side} label of {v}: self-hub must store 0"
                )));
            }
            has_self = true;
        }
    }
    if !has_self {
        return Err(Error::InvalidLabeling(format!("{side} label of {v}: missing self-hub")));
    }
    Ok(())
}

impl HubLabeling {
    /// Checks the structural invariants: sorted distinct hubs, mandatory
    /// self-hub at distance 0, distances below 2^62.
    pub fn new(out_labels: Vec<Label>, in_labels: Vec<Label>, flavor: Flavor) -> Result<Self> {
        let n = out_labels.len();
        if in_labels.len() != n {
            return Err(Error::InvalidLabeling(format!(
                "{} out-labels but {} in-labels",
                n,
                in_labels.len()
            )));
        }
        for v in 0..n {
            check_label(v, n, &out_labels[v], "out")?;
            check_label(v, n, &in_labels[v], "in")?;
        }
        Ok(HubLabeling { out_labels, in_labels, flavor })
    }

    /// Full labeling: every vertex is a hub of every label, with the given
    /// distances. Exact when `m` is exact.
    pub fn full(m: &graph::DistanceMatrix) -> Result<Self> {
        let n = m.n();
        let out = (0..n).map(|v| (0..n).map(|x| (x, m.get(v, x))).collect()).collect();
        let inn = (0..n).map(|v| (0..n).map(|x| (x, m.get(x, v))).collect()).collect();
        Self::new(out, inn, Flavor::Exact)
    }

    pub fn n(&self) -> usize {
        self.out_labels.len()
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn out_label(&self, v: Vertex) -> &Label {
        &self.out_labels[v]
    }

    pub fn in_label(&self, v: Vertex) -> &Label {
        &self.in_labels[v]
    }

    pub fn label(&self, v: Vertex, dir: Direction) -> &Label {
        match dir {
            Direction::Out => &self.out_labels[v],
            Direction::In => &self.in_labels[v],
        }
    }

    /// Largest label cardinality over both directions.
    pub fn max_label_size(&self) -> usize {
        self.out_labels.iter().chain(&self.in_labels).map(Vec::len).max().unwrap_or(0)
    }

    pub fn total_size(&self) -> usize {
        self.out_labels.iter().chain(&self.in_labels).map(Vec::len).sum()
    }

    pub fn mean_label_size(&self) -> f64 {
        if self.n() == 0 {
            return 0.0;
        }
        self.total_size() as f64 / (2 * self.n()) as f64
    }

    /// Label-induced estimate `min over common hubs x of dOut(u,x) + dIn(x,v)`;
    /// [`INFINITY`] when no hub is shared.
    pub fn est(&self, u: Vertex, v: Vertex) -> Weight {
        est_pair(&self.out_labels[u], &self.in_labels[v])
    }

    /// Structural equality of the hub sets with `other`, ignoring distances.
    pub fn same_hubs(&self, other: &HubLabeling) -> bool {
        let hubs = |l: &Label| l.iter().map(|e| e.0).collect::<Vec<_>>();
        self.n() == other.n()
            && (0..self.n()).all(|v| {
                hubs(self.out_label(v)) == hubs(other.out_label(v))
                    && hubs(self.in_label(v)) == hubs(other.in_label(v))
            })
    }

    pub(crate) fn into_parts(self) -> (Vec<Label>, Vec<Label>, Flavor) {
        (self.out_labels, self.in_labels, self.flavor)
    }
}

pub(crate) fn est_pair(out: &Label, inn: &Label) -> Weight {
    let (mut i, mut j) = (0, 0);
    let mut best = INFINITY;
    while i < out.len() && j < inn.len() {
        match out[i].0.cmp(&inn[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                best = best.min(out[i].1 + inn[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    best
}

/// A pair whose label estimate differs from the true distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverViolation {
    pub u: Vertex,
    pub v: Vertex,
    pub estimate: Weight,
    pub distance: Weight,
}

/// A stored entry that differs from the true distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryViolation {
    pub vertex: Vertex,
    pub hub: Vertex,
    pub direction: Direction,
    pub stored: Weight,
    pub distance: Weight,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub cover: Vec<CoverViolation>,
    pub entries: Vec<EntryViolation>,
    /// Only a sample of sources was checked.
    pub sampled: bool,
    pub sources_checked: usize,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.cover.is_empty() && self.entries.is_empty()
    }
}

/// Number of sources checked when the graph exceeds the oracle limit.
pub const VALIDATION_SAMPLE: usize = 64;

/// Compares the labeling against single-source searches from every vertex
/// (or a seeded sample of [`VALIDATION_SAMPLE`] vertices above the oracle
/// limit). Cover violations are pairs with `est(u,v) != dist(u,v)`.
pub fn validate(g: &Graph, l: &HubLabeling, check_exactness: bool) -> Result<ValidationReport> {
    if g.n() != l.n() {
        return Err(Error::InvalidLabeling(format!(
            "labeling has {} vertices, graph has {}",
            l.n(),
            g.n()
        )));
    }
    let n = g.n();
    let sampled = n > graph::DEFAULT_ORACLE_LIMIT;
    let sources: Vec<Vertex> = if sampled {
        let mut rng = graph::rng(0);
        (0..VALIDATION_SAMPLE).map(|_| rng.gen_range(0..n)).collect()
    } else {
        (0..n).collect()
    };
    let mut report = ValidationReport { sampled, sources_checked: sources.len(), ..Default::default() };
    for &u in &sources {
        let fwd = dijkstra(g, u, Direction::Out)?;
        for v in 0..n {
            let e = l.est(u, v);
            if e != fwd[v] {
                report.cover.push(CoverViolation { u, v, estimate: e, distance: fwd[v] });
            }
        }
        if check_exactness {
            let bwd = dijkstra(g, u, Direction::In)?;
            for &(x, d) in l.out_label(u) {
                if d != fwd[x] {
                    report.entries.push(EntryViolation {
                        vertex: u,
                        hub: x,
                        direction: Direction::Out,
                        stored: d,
                        distance: fwd[x],
                    });
                }
            }
            for &(x, d) in l.in_label(u) {
                if d != bwd[x] {
                    report.entries.push(EntryViolation {
                        vertex: u,
                        hub: x,
                        direction: Direction::In,
                        stored: d,
                        distance: bwd[x],
                    });
                }
            }
        }
    }
    Ok(report)
}
