mod common;

use common::*;
use geodetic::graph::{bfs_from, enumerate_geodesics, is_convex, is_geodetic, DistanceMatrix, PathCount};
use proptest::prelude::*;
use proptest::sample::subsequence;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distances_match_floyd_warshall(g in connected_graph(9)) {
        let d = floyd_warshall(&g);
        let dm = DistanceMatrix::new(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(dm.get(u, v), d[u][v]);
            }
        }
    }

    #[test]
    fn saturating_counts_match_enumeration(g in connected_graph(8)) {
        let d = floyd_warshall(&g);
        for u in g.vertices() {
            let layers = bfs_from(&g, u).unwrap();
            for v in g.vertices() {
                let want = match all_geodesics(&g, &d, u, v).len() {
                    0 => PathCount::Zero,
                    1 => PathCount::One,
                    _ => PathCount::Many,
                };
                prop_assert_eq!(layers.count[v], want);
            }
        }
    }

    #[test]
    fn geodetic_agrees_with_oracle(g in connected_graph(9)) {
        let report = is_geodetic(&g).unwrap();
        prop_assert_eq!(report.geodetic, oracle_geodetic(&g));
        if let Some(w) = report.witness {
            let d = floyd_warshall(&g);
            let all = all_geodesics(&g, &d, w.from, w.to);
            prop_assert!(all.len() >= 2);
            prop_assert_eq!(w.paths[0].vertices(), all[0].as_slice());
            prop_assert_eq!(w.paths[1].vertices(), all[1].as_slice());
        }
    }

    #[test]
    fn geodetic_iff_geodesic_unions_are_trees(g in connected_graph(9)) {
        let d = floyd_warshall(&g);
        let n = g.vertex_count();
        let trees = g.vertices().all(|o| {
            let union = g
                .edges()
                .filter(|&(x, y)| {
                    let (dx, dy) = (d[o][x].unwrap(), d[o][y].unwrap());
                    dx + 1 == dy || dy + 1 == dx
                })
                .count();
            union == n - 1
        });
        prop_assert_eq!(is_geodetic(&g).unwrap().geodetic, trees);
    }

    #[test]
    fn enumeration_is_sorted_and_complete(g in connected_graph(8), cap in 1usize..6) {
        let d = floyd_warshall(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                let all = all_geodesics(&g, &d, u, v);
                let got: Vec<Vec<usize>> = enumerate_geodesics(&g, u, v, cap)
                    .unwrap()
                    .into_iter()
                    .map(|p| p.0)
                    .collect();
                prop_assert_eq!(&got[..], &all[..all.len().min(cap)]);
            }
        }
    }

    #[test]
    fn convexity_matches_definition(
        (g, s) in connected_graph(8).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), subsequence((0..n).collect::<Vec<_>>(), 0..=n))
        })
    ) {
        let d = floyd_warshall(&g);
        prop_assert_eq!(is_convex(&g, &s).unwrap(), oracle_convex(&g, &d, &s));
    }

    #[test]
    fn block_graphs_are_geodetic(g in block_graph(5)) {
        prop_assert!(is_geodetic(&g).unwrap().geodetic);
        prop_assert!(oracle_geodetic(&g));
    }

    #[test]
    fn json_round_trip(g in connected_graph(9)) {
        let back = geodetic::graph::Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }
}
