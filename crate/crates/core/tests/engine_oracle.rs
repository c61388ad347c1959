use hublab_core::engine::{
    boxes_for, estimate_ecc_dsum, point, Discovery, Engine, EngineOptions, Side, WitnessTuple,
};
use hublab_core::graph::{gen_core_periphery, gen_random_strong, oracle_ecc_dsum_with_witness, oracle_all_pairs, randomize_arcs, gen_random_connected, DistanceMode, Graph};
use hublab_core::labeling::{build_pruned, HubLabeling, Label};

const MODES: [DistanceMode; 4] = DistanceMode::ALL;

fn check_against_oracle(g: &Graph, l: &HubLabeling, discovery: Discovery) {
    let opts = EngineOptions { discovery, ..Default::default() };
    let e = Engine::build(g, l, &MODES, opts).unwrap();
    let m = oracle_all_pairs(g).unwrap();
    for mode in MODES {
        let (ecc, wit, dsum) = oracle_ecc_dsum_with_witness(g, mode).unwrap();
        for u in 0..g.n() {
            let r = e.query(u, mode).unwrap();
            let (val, w) = r.ecc.unwrap();
            assert_eq!(val, ecc[u], "ecc mode {mode} u {u}");
            assert_eq!(w, wit[u], "witness mode {mode} u {u}");
            assert_eq!(m.mode(u, w, mode).unwrap(), val);
            assert_eq!(r.dsum, dsum[u], "dsum mode {mode} u {u}");
            assert_eq!(r.matched, g.n() as u64, "partition count u {u}");
        }
    }
}

#[test]
fn random_digraphs_match_oracle_with_both_discoveries() {
    let mut checked = 0;
    for seed in 0..12 {
        let g = if seed % 2 == 0 {
            gen_random_strong(20, 34, 10, seed).unwrap()
        } else {
            gen_core_periphery(90, 5, 4, 10, seed).unwrap()
        };
        let l = build_pruned(&g).unwrap();
        if l.max_label_size() > 9 {
            continue;
        }
        check_against_oracle(&g, &l, Discovery::Grouping);
        check_against_oracle(&g, &l, Discovery::Search);
        checked += 1;
    }
    assert!(checked >= 8);
}

#[test]
fn weighted_sparse_graphs_match_oracle() {
    for seed in 0..6 {
        let g = randomize_arcs(&gen_random_connected(60, 6, seed).unwrap(), 6, seed).unwrap();
        let l = build_pruned(&g).unwrap();
        check_against_oracle(&g, &l, Discovery::Auto);
    }
}

#[test]
fn fast_source_matches_oracle() {
    let g = gen_core_periphery(50, 4, 3, 7, 11).unwrap();
    let l = build_pruned(&g).unwrap();
    let opts = EngineOptions { fast_source: true, ..Default::default() };
    let e = Engine::build(&g, &l, &[DistanceMode::Source], opts).unwrap();
    let (ecc, wit, dsum) = oracle_ecc_dsum_with_witness(&g, DistanceMode::Source).unwrap();
    for u in 0..g.n() {
        let r = e.query(u, DistanceMode::Source).unwrap();
        assert_eq!(r.ecc, Some((ecc[u], wit[u])));
        assert_eq!(r.dsum, dsum[u]);
        assert_eq!(r.matched, 50);
    }
    assert!(Engine::build(&g, &l, &[DistanceMode::Min], opts).is_err());
}

/// Inflates every non-self entry by a per-vertex amount: still admissible,
/// and the engine must reproduce the label estimate.
#[test]
fn admissible_labels_follow_the_estimate() {
    let g = gen_core_periphery(35, 4, 4, 5, 3).unwrap();
    let l = build_pruned(&g).unwrap();
    let bump = |v: usize, lab: &Label| -> Label {
        lab.iter().map(|&(h, d)| if h == v { (h, d) } else { (h, d + (v % 3) as u64) }).collect()
    };
    let out = (0..35).map(|v| bump(v, l.out_label(v))).collect();
    let inn = (0..35).map(|v| bump(v, l.in_label(v))).collect();
    let a = HubLabeling::new(out, inn, hublab_core::Flavor::Admissible).unwrap();
    let e = Engine::build(&g, &a, &MODES, EngineOptions::default()).unwrap();
    for mode in MODES {
        for u in 0..35 {
            let r = e.query(u, mode).unwrap();
            let (best, sum, count) = estimate_ecc_dsum(&a, u, mode);
            assert_eq!(r.ecc, best);
            assert_eq!(r.dsum, sum);
            assert_eq!(r.reached, count);
        }
    }
}

/// Every target lies in exactly one literal box over all tuples and sides,
/// and that box uses the tree of its true least witnesses and side.
#[test]
fn literal_boxes_partition_targets() {
    for seed in 0..3 {
        let g = gen_random_strong(9, 15, 4, seed).unwrap();
        let l = build_pruned(&g).unwrap();
        let m = oracle_all_pairs(&g).unwrap();
        for u in 0..g.n() {
            let mut hits = vec![0usize; g.n()];
            let uo: Vec<usize> = l.out_label(u).iter().map(|e| e.0).collect();
            let ui: Vec<usize> = l.in_label(u).iter().map(|e| e.0).collect();
            let sizes: std::collections::BTreeSet<(usize, usize)> =
                (0..g.n()).map(|v| (l.in_label(v).len(), l.out_label(v).len())).collect();
            for &(i, j) in &sizes {
                for xmask in 1u32..(1 << uo.len()) {
                    let x_set: Vec<usize> = (0..uo.len()).filter(|b| xmask >> b & 1 == 1).map(|b| uo[b]).collect();
                    if x_set.len() > i {
                        continue;
                    }
                    for ymask in 1u32..(1 << ui.len()) {
                        let y_set: Vec<usize> = (0..ui.len()).filter(|b| ymask >> b & 1 == 1).map(|b| ui[b]).collect();
                        if y_set.len() > j {
                            continue;
                        }
                        for &x in &x_set {
                            for &y in &y_set {
                                let phi = WitnessTuple { i, j, x_set: x_set.clone(), y_set: y_set.clone(), x, y };
                                for side in [Side::Le, Side::Gt] {
                                    for ((s, t), b) in boxes_for(&l, u, &phi, side) {
                                        for v in 0..g.n() {
                                            if (l.in_label(v).len(), l.out_label(v).len()) != (i, j) {
                                                continue;
                                            }
                                            if b.contains(&point(&l, v, s, t)) {
                                                hits[v] += 1;
                                                assert_eq!(l.in_label(v)[s].0, x);
                                                assert_eq!(l.out_label(v)[t].0, y);
                                                let le = m.get(u, v) <= m.get(v, u);
                                                assert_eq!(le, side == Side::Le);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            assert!(hits.iter().all(|&h| h == 1), "u {u}: {hits:?}");
        }
    }
}
