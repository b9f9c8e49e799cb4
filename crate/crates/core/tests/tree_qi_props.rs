mod common;

use common::*;
use geodetic::graph::{is_geodetic, unique_geodesic, Graph};
use geodetic::groups::ball::cayley_ball;
use geodetic::groups::families::{gen_family, Family};
use geodetic::groups::GroupSpec;
use geodetic::iec::is_iec;
use geodetic::tree_qi::{geodesic_spanning_tree, QiContext};
use proptest::prelude::*;

fn geodetic_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![
        block_graph(5),
        connected_graph(8).prop_filter("geodetic", |g| is_geodetic(g).unwrap().geodetic),
    ]
}

/// Checks the certificate for every root and every pair.
fn certify(g: &Graph) -> Result<(), TestCaseError> {
    let d = floyd_warshall(g);
    let ctx = QiContext::new(g).unwrap();
    let lambda = ctx.lambda() as u32;
    for o in g.vertices() {
        let t = ctx.tree(o).unwrap();
        prop_assert_eq!(t.edge_count(), g.vertex_count() - 1);
        for v in g.vertices() {
            prop_assert_eq!(Some(t.depth[v]), d[o][v]);
            if let Some(p) = t.parent[v] {
                prop_assert!(g.adjacent(p, v));
            }
        }
        for u in g.vertices() {
            for v in g.vertices() {
                let dg = d[u][v].unwrap();
                let dt = t.distance(u, v);
                prop_assert!(dg <= dt && dt <= lambda * dg.max(1) || u == v);
                let gamma = unique_geodesic(g, u, v).unwrap();
                let lift = ctx.lift(&t, &gamma).unwrap();
                let path = &lift.tree_path;
                prop_assert_eq!(path.first(), Some(&u));
                prop_assert_eq!(path.last(), Some(&v));
                prop_assert!(path.windows(2).all(|w| t.contains_edge(w[0], w[1])));
                prop_assert!(lift.len() as u32 >= dt);
                prop_assert!(lift.len() as u32 <= lambda * dg);
                prop_assert_eq!(lift.closures.len(), lift.splice_points.len());
                for c in &lift.closures {
                    prop_assert!(is_iec(g, c).unwrap());
                }
            }
        }
        let report = ctx.distortion(o).unwrap();
        prop_assert!(report.bound_satisfied);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lift_and_sandwich(g in geodetic_graph()) {
        certify(&g)?;
    }
}

#[test]
fn named_graphs() {
    let mut graphs = vec![
        gen_family(&Family::Cycle(5)).unwrap(),
        gen_family(&Family::Petersen).unwrap(),
        gen_family(&Family::Psi(3)).unwrap(),
        gen_family(&Family::Tree { branching: 2, depth: 3 }).unwrap(),
    ];
    for n in 1..=6 {
        graphs.push(gen_family(&Family::Complete(n)).unwrap());
    }
    for spec in [&[(2, "a"), (3, "b")][..], &[(3, "a"), (3, "b")], &[(2, "a"), (2, "b"), (3, "c")]] {
        let spec = GroupSpec::cyclic_product(spec).unwrap();
        graphs.push(cayley_ball(&spec, 3).unwrap().graph);
    }
    for g in &graphs {
        certify(g).unwrap();
    }
}

#[test]
fn tree_requires_geodetic() {
    let c4 = gen_family(&Family::Cycle(4)).unwrap();
    assert!(geodesic_spanning_tree(&c4, 0).is_err());
}
