use hublab_core::graph::{bfs, gen_partial_ktree, gen_random_connected, oracle_ecc_dsum, randomize_arcs, Direction};
use hublab_core::labeling::{build_elimination, tighten, validate};
use hublab_core::sparse::{decide_diameter_le_k, depth_coloring, heuristic_forest, treedepth_exact, DeciderOptions};
use hublab_core::twdnc::{dnc_roundtrip, heuristic_td, DncOptions};
use hublab_core::DistanceMode;
use proptest::prelude::*;

fn diameter(g: &hublab_core::Graph) -> u64 {
    (0..g.n()).map(|u| bfs(g, u, Direction::Out).into_iter().max().unwrap()).max().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn dnc_matches_oracle(n in 2usize..120, k in 1usize..5, seed in 0u64..1000, given in any::<bool>()) {
        let (g, td) = gen_partial_ktree(n, k, 0.5, seed).unwrap();
        let g = randomize_arcs(&g, 12, seed).unwrap();
        let td = if given { td } else { heuristic_td(&g) };
        let opts = DncOptions { base: 6, audit: true, ..DncOptions::default() };
        let r = dnc_roundtrip(&g, &td, opts).unwrap();
        let (ecc, dsum) = oracle_ecc_dsum(&g, DistanceMode::Roundtrip).unwrap();
        prop_assert_eq!(r.ecc, ecc);
        prop_assert_eq!(r.dsum, dsum);
        prop_assert!(r.splits.iter().all(|s| s.balanced()));
    }

    #[test]
    fn decider_matches_bfs(n in 2usize..80, extra in 0usize..12, k in 2usize..4, seed in 0u64..1000) {
        let extra = extra.min(n * (n - 1) / 2 - (n - 1));
        let g = gen_random_connected(n, extra, seed).unwrap();
        let coloring = depth_coloring(&heuristic_forest(&g));
        let d = decide_diameter_le_k(&g, k, &coloring, DeciderOptions::default()).unwrap();
        let diam = diameter(&g);
        prop_assert_eq!(d.at_most_k, diam <= k as u64);
        if let Some((u, v, dist)) = d.witness {
            prop_assert_eq!(bfs(&g, u, Direction::Out)[v], dist);
            prop_assert!(dist > k as u64);
        }
    }

    #[test]
    fn tightened_elimination_labels_are_exact(n in 1usize..40, extra in 0usize..20, seed in 0u64..1000) {
        let extra = extra.min((n * n.saturating_sub(1) / 2).saturating_sub(n.saturating_sub(1)));
        let g = gen_random_connected(n, extra, seed).unwrap();
        let forest = treedepth_exact(&g, 25).unwrap().forest;
        let l = tighten(&build_elimination(&g, &forest).unwrap()).unwrap();
        let r = validate(&g, &l, true).unwrap();
        prop_assert!(r.is_empty() && !r.sampled, "{:?}", r);
    }
}
