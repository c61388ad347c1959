//! "Is the diameter at most k?" on graphs with a low tree-depth coloring.
//!
//! For every union of `p = min(k + 1, c)` color classes the induced subgraph
//! gets ancestor labels from an elimination forest of height at most `p`.
//! The concatenated labels overestimate every distance and are exact on
//! pairs at distance at most `k`: a shortest path with at most `k` edges has
//! at most `k + 1` vertices, so it lies inside one of the unions. The
//! eccentricity engine then decides whether every label estimate is at
//! most `k`.

use alloc::format;
use alloc::vec::Vec;

use super::coloring::{binomial, Combinations};
use super::{treedepth_exact, EliminationForest, LowTDColoring, EXACT_LIMIT};
use crate::engine::{Discovery, Engine, EngineOptions};
use crate::graph::{bfs, Direction, DistanceMode, Graph, Vertex, Weight};
use crate::labeling::{build_elimination, concat, tighten, Flavor, HubLabeling, Label};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeciderOptions {
    pub max_colors: usize,
    pub max_k: usize,
    /// Cap on `p * C(c, p)`, the label size bound of the concatenation.
    pub max_union_labels: u128,
    /// Label-size cap handed to the eccentricity engine.
    pub engine_cap: usize,
    pub exact_limit: usize,
}

impl Default for DeciderOptions {
    fn default() -> Self {
        DeciderOptions { max_colors: 32, max_k: 4, max_union_labels: 200_000, engine_cap: 32, exact_limit: EXACT_LIMIT }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterDecision {
    pub at_most_k: bool,
    /// On "no": a pair with BFS distance above `k`, and that distance.
    pub witness: Option<(Vertex, Vertex, Weight)>,
    /// Class unions processed.
    pub unions: usize,
    /// Largest concatenated label.
    pub max_label: usize,
}

/// Decides `diam(g) <= k` for an undirected unweighted connected graph.
/// The coloring must be valid for parameter `min(k + 1, c)`.
pub fn decide_diameter_le_k(
    g: &Graph,
    k: usize,
    coloring: &LowTDColoring,
    opts: DeciderOptions,
) -> Result<DiameterDecision> {
    if g.is_directed() || g.is_weighted() {
        return Err(Error::Unsupported("the decider needs an undirected unweighted graph".into()));
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if coloring.n() != g.n() {
        return Err(Error::InvalidColoring(format!("{} colors for {} vertices", coloring.n(), g.n())));
    }
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    if k > opts.max_k {
        return Err(Error::Cap { what: "k", value: k, cap: opts.max_k });
    }
    let c = coloring.count();
    if c > opts.max_colors {
        return Err(Error::Cap { what: "colors", value: c, cap: opts.max_colors });
    }
    let p = (k + 1).min(c);
    let bound = p as u128 * binomial(c, p);
    if bound > opts.max_union_labels {
        return Err(Error::Cap {
            what: "label bound p*C(c,p)",
            value: usize::try_from(bound).unwrap_or(usize::MAX),
            cap: usize::try_from(opts.max_union_labels).unwrap_or(usize::MAX),
        });
    }
    let n = g.n();
    let mut parts = Vec::new();
    for classes in Combinations::new(c, p) {
        let members = coloring.members(&classes);
        if members.is_empty() {
            continue;
        }
        let (h, map) = g.induced_subgraph(&members);
        let forest = match coloring.forest() {
            Some(f) => restricted(f, &map),
            None => treedepth_exact(&h, opts.exact_limit)?.forest,
        };
        let local = tighten(&build_elimination(&h, &forest)?)?;
        parts.push(lift(&local, &map, n)?);
    }
    let merged = concat(&parts)?;
    let max_label = merged.max_label_size();
    let engine_opts = EngineOptions { cap: opts.engine_cap, fast_source: true, discovery: Discovery::Auto };
    let engine = Engine::from_labeling(&merged, &[DistanceMode::Source], engine_opts)?;
    for u in 0..n {
        let q = engine.query(u, DistanceMode::Source)?;
        let over = q.reached < n as u64 || q.ecc.is_some_and(|(e, _)| e > k as Weight);
        if over {
            let d = bfs(g, u, Direction::Out);
            let (far, v) = d.iter().enumerate().map(|(v, &x)| (x, core::cmp::Reverse(v))).max().expect("n >= 1");
            if far <= k as Weight {
                return Err(Error::Internal(format!("estimate from {u} exceeds {k} but its eccentricity is {far}")));
            }
            return Ok(DiameterDecision { at_most_k: false, witness: Some((u, v.0, far)), unions: parts.len(), max_label });
        }
    }
    Ok(DiameterDecision { at_most_k: true, witness: None, unions: parts.len(), max_label })
}

/// The forest restricted to `map` (ascending original IDs), renumbered.
fn restricted(f: &EliminationForest, map: &[Vertex]) -> EliminationForest {
    let mut member = alloc::vec![false; f.n()];
    for &v in map {
        member[v] = true;
    }
    let r = f.restrict(&member);
    let parent = map.iter().map(|&v| r.parent(v).map(|p| map.binary_search(&p).expect("member parent"))).collect();
    EliminationForest::new(parent).expect("renumbered forest")
}

/// Labels of an induced subgraph expressed over the whole vertex set;
/// outside vertices keep only their self hub.
fn lift(local: &HubLabeling, map: &[Vertex], n: usize) -> Result<HubLabeling> {
    let mut out: Vec<Label> = (0..n).map(|v| alloc::vec![(v, 0)]).collect();
    let mut inn = out.clone();
    for (i, &v) in map.iter().enumerate() {
        out[v] = local.out_label(i).iter().map(|&(x, d)| (map[x], d)).collect();
        inn[v] = local.in_label(i).iter().map(|&(x, d)| (map[x], d)).collect();
    }
    HubLabeling::new(out, inn, Flavor::Admissible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_partial_ktree, gen_path, gen_star, oracle_ecc_dsum};
    use crate::sparse::{depth_coloring, heuristic_forest};

    fn decide(g: &Graph, k: usize) -> DiameterDecision {
        let coloring = depth_coloring(&heuristic_forest(g));
        decide_diameter_le_k(g, k, &coloring, DeciderOptions::default()).unwrap()
    }

    #[test]
    fn star_has_diameter_two() {
        let d = decide(&gen_star(6).unwrap(), 2);
        assert!(d.at_most_k && d.witness.is_none());
    }

    #[test]
    fn p5_is_rejected_with_endpoint_witness() {
        let d = decide(&gen_path(5).unwrap(), 2);
        assert!(!d.at_most_k);
        assert_eq!(d.witness, Some((0, 4, 4)));
        assert!(decide(&gen_path(5).unwrap(), 4).at_most_k);
    }

    #[test]
    fn external_coloring_without_forest() {
        let g = gen_path(4).unwrap();
        let coloring = LowTDColoring::new(alloc::vec![1, 0, 2, 1]);
        let d = decide_diameter_le_k(&g, 3, &coloring, DeciderOptions::default()).unwrap();
        assert!(d.at_most_k);
        assert!(!decide_diameter_le_k(&g, 2, &coloring, DeciderOptions::default()).unwrap().at_most_k);
    }

    #[test]
    fn partial_two_trees_match_bfs() {
        for seed in 0..6 {
            let (g, _) = gen_partial_ktree(40, 2, 0.5, seed).unwrap();
            let (ecc, _) = oracle_ecc_dsum(&g, DistanceMode::Source).unwrap();
            let diam = *ecc.iter().max().unwrap() as usize;
            let coloring = depth_coloring(&heuristic_forest(&g));
            assert!(coloring.count() <= 32, "seed {seed}: {} colors", coloring.count());
            for k in [diam.saturating_sub(1).max(1), diam] {
                let opts = DeciderOptions { max_k: diam, max_union_labels: u128::MAX, ..Default::default() };
                let d = decide_diameter_le_k(&g, k, &coloring, opts).unwrap();
                assert_eq!(d.at_most_k, diam <= k, "seed {seed} k {k}");
                if let Some((u, v, dist)) = d.witness {
                    assert_eq!(bfs(&g, u, Direction::Out)[v], dist);
                    assert!(dist as usize > k);
                }
            }
        }
    }
}
