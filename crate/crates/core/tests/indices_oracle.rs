use hublab_core::engine::Discovery;
use hublab_core::graph::{gen_complete, gen_cycle, gen_grid, gen_path, gen_random_connected, gen_star};
use hublab_core::indices::{
    brute_closer, brute_edge_closer, brute_indices, compute_indices, CloserEngine, IndexOptions, SimpleEngine,
    Targets,
};
use hublab_core::labeling::{build_pruned, HubLabeling};
use hublab_core::Graph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn check(g: &Graph, l: &HubLabeling, discovery: Discovery) {
    let opts = IndexOptions { discovery, ..IndexOptions::default() };
    let got = compute_indices(g, l, opts).unwrap();
    let want = brute_indices(g).unwrap();
    assert!(got.same_values(&want), "engine {got:?}\noracle {want:?}");
}

#[test]
fn named_families_match_oracle() {
    let graphs = [
        gen_path(17).unwrap(),
        gen_cycle(12).unwrap(),
        gen_star(9).unwrap(),
        gen_complete(7).unwrap(),
        gen_grid(4, 5).unwrap(),
    ];
    for g in &graphs {
        let l = build_pruned(g).unwrap();
        check(g, &l, Discovery::Grouping);
        check(g, &l, Discovery::Search);
    }
}

#[test]
fn closer_counts_match_oracle_on_all_pairs() {
    for seed in 0..4 {
        let g = gen_random_connected(30, 6, seed).unwrap();
        let l = build_pruned(&g).unwrap();
        let n = g.n();
        let want = brute_closer(&g).unwrap();
        let want_e = brute_edge_closer(&g).unwrap();
        for discovery in [Discovery::Grouping, Discovery::Search] {
            let opts = IndexOptions { discovery, ..IndexOptions::default() };
            let v = CloserEngine::build(&g, &l, Targets::Vertices, opts).unwrap();
            let e = CloserEngine::build(&g, &l, Targets::Edges, opts).unwrap();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(v.closer(a, b).unwrap(), want[a * n + b], "n_closer({a},{b})");
                    assert_eq!(e.closer(a, b).unwrap(), want_e[a * n + b], "n_edge_closer({a},{b})");
                }
            }
        }
    }
}

#[test]
fn szeged_convention_and_bipartite_split() {
    let g = gen_grid(3, 4).unwrap();
    let l = build_pruned(&g).unwrap();
    let v = CloserEngine::build(&g, &l, Targets::Vertices, IndexOptions::default()).unwrap();
    let mut ordered = 0u128;
    for &(a, b) in v.edges() {
        let (x, y) = (v.closer(a, b).unwrap(), v.closer(b, a).unwrap());
        assert_eq!(x + y, g.n() as u64, "bipartite edge ({a},{b})");
        ordered += (x * y) as u128 * 2;
    }
    assert_eq!(ordered / 2, v.szeged().unwrap());
}

#[test]
fn hyper_wiener_is_half_of_power_sums() {
    let g = gen_random_connected(40, 10, 9).unwrap();
    let l = build_pruned(&g).unwrap();
    let e = SimpleEngine::build(&g, &l, 3, IndexOptions::default()).unwrap();
    let p1 = e.power_sum(1).unwrap();
    assert_eq!(BigUint::from(e.wiener().unwrap()), p1);
    let half = BigRational::new(BigInt::from(p1) + BigInt::from(e.power_sum(2).unwrap()), BigInt::from(2));
    assert_eq!(e.hyper_wiener().unwrap(), half);
    // Exponents above the stored channels take the point-visiting path.
    let brute: BigUint = {
        let m = hublab_core::graph::oracle_all_pairs(&g).unwrap();
        (0..g.n()).flat_map(|u| (0..g.n()).map(move |v| (u, v))).map(|(u, v)| BigUint::from(m.get(u, v)).pow(6)).sum()
    };
    assert_eq!(e.power_sum(6).unwrap(), brute);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_connected_graphs_match_oracle(n in 2usize..60, extra in 0usize..20, seed in any::<u64>()) {
        let extra = extra.min(n * (n - 1) / 2 - (n - 1));
        let g = gen_random_connected(n, extra, seed).unwrap();
        let l = build_pruned(&g).unwrap();
        check(&g, &l, Discovery::Auto);
    }
}
