//! Independent oracles and graph strategies shared by the property suites.
//!
//! Nothing here calls the library's BFS, counting or enumeration routines:
//! distances come from Floyd–Warshall and paths from plain depth-first walks.
#![allow(dead_code)]

use std::collections::BTreeSet;

use geodetic::graph::{Graph, VertexId};
use proptest::prelude::*;
use proptest::sample::Index;

pub type Dist = Vec<Vec<Option<u32>>>;

pub fn floyd_warshall(g: &Graph) -> Dist {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
    }
    for (u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|x| ik + kj < x) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Every shortest `u`–`v` path, found by walking exactly `d(u, v)` steps.
pub fn all_geodesics(g: &Graph, d: &Dist, u: VertexId, v: VertexId) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let Some(len) = d[u][v] else { return out };
    let mut path = vec![u];
    fn walk(g: &Graph, d: &Dist, v: VertexId, left: u32, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let cur = *path.last().unwrap();
        if left == 0 {
            if cur == v {
                out.push(path.clone());
            }
            return;
        }
        for w in g.vertices() {
            if g.adjacent(cur, w) && d[w][v].is_some_and(|x| x < left) {
                path.push(w);
                walk(g, d, v, left - 1, path, out);
                path.pop();
            }
        }
    }
    walk(g, d, v, len, &mut path, &mut out);
    out
}

/// Geodetic by definition: connected, one geodesic per pair.
pub fn oracle_geodetic(g: &Graph) -> bool {
    let d = floyd_warshall(g);
    g.vertices()
        .all(|u| g.vertices().all(|v| d[u][v].is_some() && all_geodesics(g, &d, u, v).len() == 1))
}

fn canonical(cycle: &[VertexId]) -> Vec<VertexId> {
    let n = cycle.len();
    let mut best: Option<Vec<VertexId>> = None;
    for r in 0..n {
        for dir in [false, true] {
            let seq: Vec<VertexId> = (0..n)
                .map(|k| if dir { cycle[(r + n - k) % n] } else { cycle[(r + k) % n] })
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    let mut b = best.unwrap();
    b.push(b[0]);
    b
}

/// All simple cycles of length `3..=max_len`, canonical and closed.
pub fn simple_cycles(g: &Graph, max_len: usize) -> BTreeSet<Vec<VertexId>> {
    let mut out = BTreeSet::new();
    for s in g.vertices() {
        let mut path = vec![s];
        fn grow(g: &Graph, s: VertexId, max_len: usize, path: &mut Vec<VertexId>, out: &mut BTreeSet<Vec<VertexId>>) {
            let cur = *path.last().unwrap();
            for w in g.vertices() {
                if !g.adjacent(cur, w) {
                    continue;
                }
                if w == s && path.len() >= 3 {
                    out.insert(canonical(path));
                } else if w > s && !path.contains(&w) && path.len() < max_len {
                    path.push(w);
                    grow(g, s, max_len, path, out);
                    path.pop();
                }
            }
        }
        grow(g, s, max_len, &mut path, &mut out);
    }
    out
}

/// Cyclic distances agree with graph distances.
pub fn isometric_cycle(d: &Dist, closed: &[VertexId]) -> bool {
    let n = closed.len() - 1;
    (0..n).all(|i| {
        (i + 1..n).all(|j| d[closed[i]][closed[j]] == Some((j - i).min(n - j + i) as u32))
    })
}

pub fn oracle_iecs(g: &Graph) -> BTreeSet<Vec<VertexId>> {
    let d = floyd_warshall(g);
    simple_cycles(g, g.vertex_count())
        .into_iter()
        .filter(|c| isometric_cycle(&d, c))
        .collect()
}

/// Convex by definition: every geodesic between members stays inside.
pub fn oracle_convex(g: &Graph, d: &Dist, s: &[VertexId]) -> bool {
    s.iter().all(|&u| {
        s.iter()
            .all(|&v| all_geodesics(g, d, u, v).iter().all(|p| p.iter().all(|x| s.contains(x))))
    })
}

pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Graph {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<(&str, &str)> = edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    Graph::new(&names, &edges).unwrap()
}

/// Connected graphs on `1..=max_n` vertices: a random spanning tree plus
/// random extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            let extra = proptest::collection::vec((0..n, 0..n), 0..=n);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect();
            edges.extend(extra);
            numbered(n, &edges)
        })
}

/// Block graphs whose blocks are complete graphs or odd cycles. Gluing
/// geodetic blocks at cut vertices keeps the graph geodetic.
pub fn block_graph(max_blocks: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec((0..3usize, 1..4usize, any::<Index>()), 0..=max_blocks).prop_map(|blocks| {
        let mut n = 1;
        let mut edges = Vec::new();
        for (kind, k, at) in blocks {
            let a = at.index(n);
            let mut ring = vec![a];
            let size = match kind {
                0 => k + 1,
                1 => 2 * k + 1,
                _ => 2,
            };
            ring.extend(n..n + size - 1);
            n += size - 1;
            if kind == 0 {
                for i in 0..ring.len() {
                    for j in i + 1..ring.len() {
                        edges.push((ring[i], ring[j]));
                    }
                }
            } else {
                for i in 0..ring.len() {
                    edges.push((ring[i], ring[(i + 1) % ring.len()]));
                }
            }
        }
        numbered(n, &edges)
    })
}
