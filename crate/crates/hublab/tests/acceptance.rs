//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a criterion fails for a reason other than the documented
//! complete-graph limit. Run with `cargo test -p hublab --test acceptance`.
//!
//! The criteria run one after another so that the timing check in
//! criterion 7 does not compete with the others for cores.

use std::time::Instant;

use hublab::commands::bfs_diameter;
use hublab_core::engine::{Engine, EngineOptions};
use hublab_core::graph::{
    bfs, dijkstra, gen_complete, gen_core_periphery, gen_cycle, gen_grid, gen_kary_tree, gen_partial_ktree,
    gen_path, gen_random_connected, gen_split, gen_star, oracle_ecc_dsum, randomize_arcs, Direction,
};
use hublab_core::indices::{
    brute_closer, brute_edge_closer, brute_indices, compute_indices, CloserEngine, IndexOptions, IndexReport,
    Targets, INDEX_CAP,
};
use hublab_core::labeling::{build_elimination, build_pruned, build_split, tighten, validate, HubLabeling};
use hublab_core::sparse::{
    decide_diameter_le_k, depth_coloring, heuristic_forest, treedepth_exact, DeciderOptions, EliminationForest,
    EXACT_LIMIT,
};
use hublab_core::twdnc::{dnc_roundtrip, DncOptions};
use hublab_core::{DistanceMode, Graph, Weight};
use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;

/// Criterion 7: query time may grow by less than this factor for 10x more vertices.
const GROWTH_LIMIT: f64 = 3.0;
/// Criterion 7: minimum speedup over Dijkstra at the larger size.
const SPEEDUP_MIN: f64 = 10.0;
/// Criterion 3: complete graphs are attempted up to this order.
const COMPLETE_MAX: usize = 64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(id: usize, name: &str, o: &Outcome, secs: f64) {
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("{tag} criterion {id} ({name}, {secs:.1}s): {}", o.detail);
}

/// Pruned or tightened elimination labels, whichever has the smaller
/// maximum label size.
fn small_labels(g: &Graph) -> HubLabeling {
    let pruned = build_pruned(g).unwrap();
    let forest = heuristic_forest(g);
    let elim = tighten(&build_elimination(g, &forest).unwrap()).unwrap();
    if elim.max_label_size() < pruned.max_label_size() {
        elim
    } else {
        pruned
    }
}

fn four_modes() -> (Outcome, Outcome) {
    let mut mismatches = 0usize;
    let mut bad_counts = 0usize;
    let mut queries = 0usize;
    let mut max_k = 0;
    for i in 0..50u64 {
        let n = 50 + 5 * i as usize;
        let g = gen_core_periphery(n, 6 + (i % 3) as usize, (i % 4) as usize, 20, 1000 + i).unwrap();
        assert!(g.is_directed() && g.is_weighted() && g.is_strongly_connected());
        let l = build_pruned(&g).unwrap();
        max_k = max_k.max(l.max_label_size());
        let engine = Engine::build(&g, &l, &DistanceMode::ALL, EngineOptions::default()).unwrap();
        let answers: Vec<_> = (0..n)
            .into_par_iter()
            .map(|u| (engine.query_modes(u, &DistanceMode::ALL).unwrap(), engine.partition_count(u).unwrap()))
            .collect();
        for (m, &mode) in DistanceMode::ALL.iter().enumerate() {
            let (ecc, dsum) = oracle_ecc_dsum(&g, mode).unwrap();
            for u in 0..n {
                let r = &answers[u].0[m];
                if r.ecc.map(|e| e.0) != Some(ecc[u]) || r.dsum != dsum[u] {
                    mismatches += 1;
                }
            }
        }
        bad_counts += answers.iter().filter(|a| a.1 != n as u64).count();
        queries += n;
    }
    (
        Outcome {
            passed: mismatches == 0,
            detail: format!("50 digraphs, {queries} sources x 4 modes, max label {max_k}, {mismatches} mismatches"),
        },
        Outcome {
            passed: bad_counts == 0,
            detail: format!("{queries} sources, {bad_counts} with count != n"),
        },
    )
}

fn p3_anchors() -> bool {
    let g = gen_path(3).unwrap();
    let r = compute_indices(&g, &build_pruned(&g).unwrap(), IndexOptions::default()).unwrap().unordered();
    let full = compute_indices(&g, &build_pruned(&g).unwrap(), IndexOptions::default()).unwrap();
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    r.wiener == 4
        && r.hyper_wiener == q(5, 1)
        && r.harary == q(5, 2)
        && r.rcw == q(2, 1)
        && full.szeged == 4
        && full.padmakar_ivan == 2
}

/// Engine against brute force, including every `n_closer` and
/// `n_edge_closer` value when `pairs` is set.
fn indices_match(g: &Graph, l: &HubLabeling, pairs: bool) -> Result<bool, String> {
    let opts = IndexOptions { cap: INDEX_CAP, ..IndexOptions::default() };
    let got: IndexReport = compute_indices(g, l, opts).map_err(|e| e.to_string())?;
    let want = brute_indices(g).unwrap();
    let mut ok = got.same_values(&want) && got.power_sums.len() == 3;
    ok &= got.power_sums[0] == BigUint::from(want.wiener);
    if pairs {
        let n = g.n();
        let v = CloserEngine::build(g, l, Targets::Vertices, opts).map_err(|e| e.to_string())?;
        let e = CloserEngine::build(g, l, Targets::Edges, opts).map_err(|e| e.to_string())?;
        let (bv, be) = (brute_closer(g).unwrap(), brute_edge_closer(g).unwrap());
        for a in 0..n {
            for b in 0..n {
                ok &= v.closer(a, b).unwrap() == bv[a * n + b] && e.closer(a, b).unwrap() == be[a * n + b];
            }
        }
    }
    Ok(ok)
}

/// Returns the criterion outcome and whether every feasible instance matched.
fn index_suite() -> (Outcome, bool) {
    let mut graphs: Vec<(String, Graph, bool)> = Vec::new();
    for n in [2, 3, 5, 8, 13, 21, 34, 50, 64] {
        graphs.push((format!("P{n}"), gen_path(n).unwrap(), n <= 21));
        if n >= 3 {
            graphs.push((format!("C{n}"), gen_cycle(n).unwrap(), n <= 21));
        }
        graphs.push((format!("S{n}"), gen_star(n).unwrap(), n <= 21));
    }
    let complete: Vec<usize> = vec![2, 3, 5, 8, 13, 21, 32, 48, COMPLETE_MAX];
    for &n in &complete {
        graphs.push((format!("K{n}"), gen_complete(n).unwrap(), n <= 8));
    }
    for i in 0..30u64 {
        let n = 20 + 6 * i as usize;
        graphs.push((format!("G({n},{i})"), gen_random_connected(n, n / 3, 500 + i).unwrap(), n <= 40));
    }
    let mut matched = 0;
    let mut wrong = Vec::new();
    let mut infeasible = Vec::new();
    for (name, g, pairs) in &graphs {
        let l = small_labels(g);
        match indices_match(g, &l, *pairs) {
            Ok(true) => matched += 1,
            Ok(false) => wrong.push(name.clone()),
            Err(e) => infeasible.push(format!("{name} (k = {}: {e})", l.max_label_size())),
        }
    }
    let anchors = p3_anchors();
    let feasible_ok = wrong.is_empty() && anchors;
    let mut detail = format!(
        "{matched}/{} graphs exact, P3 anchors {}",
        graphs.len(),
        if anchors { "hold" } else { "FAIL" }
    );
    if !wrong.is_empty() {
        detail += &format!(", mismatches on {}", wrong.join(" "));
    }
    if !infeasible.is_empty() {
        detail += &format!(", not computable: {}", infeasible.join("; "));
    }
    (Outcome { passed: feasible_ok && infeasible.is_empty(), detail }, feasible_ok)
}

fn twdnc_suite() -> Outcome {
    let mut mismatches = 0;
    let mut unbalanced = 0;
    let mut splits = 0;
    let mut worst: f64 = 0.0;
    for k in 2..=4 {
        for seed in 0..20u64 {
            let n = 400 - 7 * seed as usize;
            let (g, td) = gen_partial_ktree(n, k, 0.5, 40 * k as u64 + seed).unwrap();
            let g = randomize_arcs(&g, 30, seed).unwrap();
            let r = dnc_roundtrip(&g, &td, DncOptions::default()).unwrap();
            let (ecc, dsum) = oracle_ecc_dsum(&g, DistanceMode::Roundtrip).unwrap();
            if r.ecc != ecc || r.dsum != dsum {
                mismatches += 1;
            }
            for s in &r.splits {
                splits += 1;
                let limit = (2 * s.n).div_ceil(3);
                if s.larger > limit {
                    unbalanced += 1;
                }
                worst = worst.max(s.larger as f64 / s.n as f64);
            }
        }
    }
    Outcome {
        passed: mismatches == 0 && unbalanced == 0,
        detail: format!(
            "60 digraphs, {mismatches} vector mismatches, {splits} separator nodes, {unbalanced} unbalanced, worst part ratio {worst:.3}"
        ),
    }
}

fn decider_suite() -> Outcome {
    let mut graphs = Vec::new();
    // Small orders give some diameters within k.
    for i in 0..20usize {
        let n = if i < 8 { 4 + i } else { 25 * (i - 7) };
        graphs.push(gen_partial_ktree(n, 2, 0.5, 300 + i as u64).unwrap().0);
        graphs.push(gen_random_connected(n, n / 5, 700 + i as u64).unwrap());
    }
    let (mut wrong, mut bad_witness, mut yes, mut no, mut max_colors) = (0, 0, 0, 0, 0);
    for g in &graphs {
        let coloring = depth_coloring(&heuristic_forest(g));
        max_colors = max_colors.max(coloring.count());
        let (diam, _, _) = bfs_diameter(g);
        for k in [2usize, 3] {
            let d = decide_diameter_le_k(g, k, &coloring, DeciderOptions::default()).unwrap();
            if d.at_most_k != (diam <= k as Weight) {
                wrong += 1;
            }
            if d.at_most_k {
                yes += 1;
            } else {
                no += 1;
                match d.witness {
                    Some((u, v, dist)) if bfs(g, u, Direction::Out)[v] == dist && dist > k as Weight => {}
                    _ => bad_witness += 1,
                }
            }
        }
    }
    Outcome {
        passed: wrong == 0 && bad_witness == 0,
        detail: format!(
            "40 graphs x k in {{2,3}}: {yes} yes, {no} no, {wrong} wrong, {bad_witness} bad witnesses, up to {max_colors} colors"
        ),
    }
}

fn split_suite() -> Outcome {
    let (mut invalid, mut oversized, mut folklore_wrong, mut diam2, mut diam3) = (0, 0, 0, 0, 0);
    for i in 0..10u64 {
        let k_size = 4 + 2 * i as usize;
        let p = 0.35 + 0.065 * i as f64;
        let (g, clique) = gen_split(k_size, 30 + 5 * i as usize, p, 900 + i).unwrap();
        let n = g.n();
        let l = build_split(&g, &clique).unwrap();
        if !validate(&g, &l, true).unwrap().is_empty() {
            invalid += 1;
        }
        if l.max_label_size() > clique.len() + 1 {
            oversized += 1;
        }
        let opts = EngineOptions { cap: l.max_label_size(), ..EngineOptions::default() };
        let engine = Engine::build(&g, &l, &[DistanceMode::Source], opts).unwrap();
        let sums = engine.all_dsum(DistanceMode::Source).unwrap();
        let test = (0..n).all(|v| sums[v] == (2 * (n - 1) - g.degree(v)) as u128);
        let (diam, _, _) = bfs_diameter(&g);
        if test != (diam <= 2) {
            folklore_wrong += 1;
        }
        if diam <= 2 {
            diam2 += 1;
        } else {
            diam3 += 1;
        }
    }
    Outcome {
        passed: invalid == 0 && oversized == 0 && folklore_wrong == 0,
        detail: format!(
            "10 split graphs ({diam2} of diameter <= 2, {diam3} larger): {invalid} invalid labelings, {oversized} over |K|+1, {folklore_wrong} sum-test disagreements"
        ),
    }
}

/// Mean engine and Dijkstra times (microseconds) for single-vertex ecc on
/// the height-3 tree of the given fanout.
fn tree_timing(fanout: usize) -> (usize, usize, f64, f64, bool) {
    let n = 1 + fanout + fanout * fanout + fanout * fanout * fanout;
    let g = gen_kary_tree(n, fanout).unwrap();
    let parents = (0..n).map(|v| if v == 0 { None } else { Some((v - 1) / fanout) }).collect();
    let forest = EliminationForest::new(parents).unwrap();
    let l = build_elimination(&g, &forest).unwrap();
    let opts = EngineOptions { fast_source: true, ..EngineOptions::default() };
    let engine = Engine::build(&g, &l, &[DistanceMode::Source], opts).unwrap();
    let sample: Vec<usize> = (0..400).map(|i| i * n / 400).collect();
    // Untimed warm-up pass.
    for &u in &sample {
        engine.ecc(u, DistanceMode::Source).unwrap();
    }
    let start = Instant::now();
    let eccs: Vec<Weight> = sample.iter().map(|&u| engine.ecc(u, DistanceMode::Source).unwrap().0).collect();
    let query = start.elapsed().as_secs_f64() * 1e6 / sample.len() as f64;
    let probes = &sample[..40];
    let start = Instant::now();
    let exact: Vec<Weight> =
        probes.iter().map(|&u| dijkstra(&g, u, Direction::Out).unwrap().into_iter().max().unwrap()).collect();
    let fresh = start.elapsed().as_secs_f64() * 1e6 / probes.len() as f64;
    let correct = exact.iter().zip(&eccs).all(|(a, b)| a == b);
    (n, l.max_label_size(), query, fresh, correct)
}

fn scaling_suite() -> Outcome {
    let (n1, k1, q1, _, ok1) = tree_timing(21);
    let (n2, k2, q2, d2, ok2) = tree_timing(46);
    let growth = q2 / q1;
    let speedup = d2 / q2;
    Outcome {
        passed: ok1 && ok2 && growth < GROWTH_LIMIT && speedup >= SPEEDUP_MIN,
        detail: format!(
            "n {n1} (k {k1}): {q1:.1} us/query; n {n2} (k {k2}): {q2:.1} us/query vs Dijkstra {d2:.1} us; growth {growth:.2} (< {GROWTH_LIMIT}), speedup {speedup:.1} (>= {SPEEDUP_MIN}), answers {}",
            if ok1 && ok2 { "exact" } else { "WRONG" }
        ),
    }
}

fn admissible_suite() -> Outcome {
    let mut graphs: Vec<Graph> = vec![
        gen_path(150).unwrap(),
        gen_cycle(120).unwrap(),
        gen_star(150).unwrap(),
        gen_grid(6, 8).unwrap(),
        gen_kary_tree(150, 2).unwrap(),
        gen_kary_tree(121, 3).unwrap(),
    ];
    for s in 0..6u64 {
        graphs.push(gen_partial_ktree(40 + 20 * s as usize, 1 + s as usize % 3, 0.6, 60 + s).unwrap().0);
        graphs.push(gen_random_connected(30 + 20 * s as usize, 5 + s as usize, 80 + s).unwrap());
        graphs.push(gen_split(6, 40, 0.4, 90 + s).unwrap().0);
    }
    let (mut bad, mut checked) = (0, 0);
    for g in &graphs {
        let forest = treedepth_exact(g, EXACT_LIMIT).unwrap().forest;
        let mut subjects = vec![g.clone()];
        // Unions of two classes of the depth coloring.
        let coloring = depth_coloring(&forest);
        for c in 0..coloring.count().saturating_sub(1).min(4) {
            let (h, _) = g.induced_subgraph(&coloring.members(&[c, c + 1]));
            subjects.push(h);
        }
        for h in &subjects {
            for comp in h.components_within(&vec![true; h.n()]) {
                let (piece, _) = h.induced_subgraph(&comp);
                let f = treedepth_exact(&piece, EXACT_LIMIT).unwrap().forest;
                let l = tighten(&build_elimination(&piece, &f).unwrap()).unwrap();
                let r = validate(&piece, &l, true).unwrap();
                checked += 1;
                if !r.is_empty() || r.sampled {
                    bad += 1;
                }
            }
        }
    }
    Outcome { passed: bad == 0, detail: format!("{checked} graphs and induced subgraphs, {bad} not exact") }
}

fn main() {
    let mut failures = Vec::new();
    let timed = |f: &mut dyn FnMut()| {
        let start = Instant::now();
        f();
        start.elapsed().as_secs_f64()
    };

    let mut c12 = None;
    let secs = timed(&mut || c12 = Some(four_modes()));
    let (c1, c2) = c12.unwrap();
    report(1, "four-mode ecc and dsum", &c1, secs);
    report(2, "partition count", &c2, secs);
    for (id, o) in [(1, &c1), (2, &c2)] {
        if !o.passed {
            failures.push(id);
        }
    }

    let mut c3 = None;
    let secs = timed(&mut || c3 = Some(index_suite()));
    let (c3, feasible_ok) = c3.unwrap();
    report(3, "graph indices", &c3, secs);
    if !feasible_ok {
        failures.push(3);
    }

    let suites: [(usize, &str, fn() -> Outcome); 5] = [
        (4, "separator recursion", twdnc_suite),
        (5, "diameter decider", decider_suite),
        (6, "split graphs", split_suite),
        (7, "scaling", scaling_suite),
        (8, "admissible labels", admissible_suite),
    ];
    for (id, name, f) in suites {
        let mut o = None;
        let secs = timed(&mut || o = Some(f()));
        let o = o.unwrap();
        report(id, name, &o, secs);
        if !o.passed {
            failures.push(id);
        }
    }
    if !failures.is_empty() {
        eprintln!("criteria failed: {failures:?}");
        std::process::exit(1);
    }
}
