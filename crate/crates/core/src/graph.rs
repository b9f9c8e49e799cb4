//! Finite simple undirected graphs and their shortest-path structure.
//!
//! Vertices carry opaque string identifiers externally and dense indices
//! internally; the declaration order of the identifiers fixes the internal
//! numbering, and every "lexicographic" choice in the crate (witness pairs,
//! enumeration order, canonical circuits) is taken with respect to it.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense internal vertex index.
pub type VertexId = usize;

/// Sentinel used by [`DistanceMatrix`] for unreachable pairs.
const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<VertexId>>,
}

/// On-disk graph format: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    /// Builds a graph over the declared vertices. Every edge endpoint must be
    /// declared; duplicate edges collapse.
    pub fn new<S, E>(vertices: &[S], edges: &[(E, E)]) -> Result<Self>
    where
        S: AsRef<str>,
        E: AsRef<str>,
    {
        let mut g = Graph::empty();
        for v in vertices {
            g.push_vertex(v.as_ref())?;
        }
        for (a, b) in edges {
            let u = g.vertex(a.as_ref())?;
            let v = g.vertex(b.as_ref())?;
            g.push_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    /// Builds a graph from an edge list, declaring vertices in order of first
    /// appearance. `isolated` vertices are declared after all edge endpoints.
    pub fn from_edges<E: AsRef<str>>(edges: &[(E, E)], isolated: &[E]) -> Result<Self> {
        let mut g = Graph::empty();
        for (a, b) in edges {
            if a.as_ref() == b.as_ref() {
                return Err(Error::SelfLoop(a.as_ref().to_string()));
            }
            let u = g.intern(a.as_ref());
            let v = g.intern(b.as_ref());
            g.push_edge(u, v)?;
        }
        for v in isolated {
            g.intern(v.as_ref());
        }
        g.finish();
        Ok(g)
    }

    pub(crate) fn empty() -> Self {
        Graph {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub(crate) fn push_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        Ok(self.intern(name))
    }

    fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.adj.push(Vec::new());
        id
    }

    pub(crate) fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(self.names[u].clone()));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub(crate) fn finish(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let edges: Vec<(&str, &str)> = file
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Graph::new(&file.vertices, &edges)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Looks up a vertex by name, failing with [`Error::UnknownVertex`].
    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn check(&self, v: VertexId) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn render(&self, path: &[VertexId]) -> Vec<String> {
        path.iter().map(|&v| self.names[v].clone()).collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Fails with [`Error::Disconnected`] naming one vertex from each of the
    /// first two components.
    pub fn require_connected(&self) -> Result<()> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(
                self.names[comps[0][0]].clone(),
                self.names[comps[1][0]].clone(),
            ));
        }
        Ok(())
    }

    /// Plain BFS distances from `root`.
    pub fn distances_from(&self, root: VertexId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Checks that `path` is a walk in the graph whose length equals the
    /// distance between its endpoints.
    pub fn is_geodesic(&self, path: &[VertexId]) -> bool {
        let Some(&first) = path.first() else {
            return false;
        };
        if path.iter().any(|&v| v >= self.vertex_count()) {
            return false;
        }
        if path.windows(2).any(|w| !self.adjacent(w[0], w[1])) {
            return false;
        }
        let dist = self.distances_from(first);
        dist[*path.last().unwrap()] == Some((path.len() - 1) as u32)
    }
}

/// Saturating count of geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PathCount {
    Zero,
    One,
    Many,
}

impl PathCount {
    fn add(self, other: PathCount) -> PathCount {
        match (self, other) {
            (PathCount::Zero, x) | (x, PathCount::Zero) => x,
            _ => PathCount::Many,
        }
    }
}

/// Per-root BFS layers with saturating geodesic counts and predecessor sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLayers {
    pub root: VertexId,
    pub dist: Vec<Option<u32>>,
    pub count: Vec<PathCount>,
    pub preds: Vec<Vec<VertexId>>,
}

impl BfsLayers {
    /// First vertex (in declaration order) reached by two or more geodesics.
    pub fn first_ambiguous(&self) -> Option<VertexId> {
        self.count.iter().position(|&c| c == PathCount::Many)
    }

    /// Walks the unique predecessor chain back to the root. Only meaningful
    /// when `count[v] == One`.
    fn unique_path_to(&self, v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.root {
            cur = self.preds[cur][0];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

pub fn bfs_from(g: &Graph, root: VertexId) -> Result<BfsLayers> {
    g.check(root)?;
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    let mut count = vec![PathCount::Zero; n];
    let mut preds = vec![Vec::new(); n];
    dist[root] = Some(0);
    count[root] = PathCount::One;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            match dist[w] {
                None => {
                    dist[w] = Some(du + 1);
                    count[w] = count[u];
                    preds[w].push(u);
                    queue.push_back(w);
                }
                Some(dw) if dw == du + 1 => {
                    count[w] = count[w].add(count[u]);
                    preds[w].push(u);
                }
                Some(_) => {}
            }
        }
    }
    // Vertices are dequeued in nondecreasing distance, so every predecessor is
    // final before its successors are reached; preds are pushed in dequeue
    // order, which need not be index order.
    for p in &mut preds {
        p.sort_unstable();
    }
    Ok(BfsLayers {
        root,
        dist,
        count,
        preds,
    })
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|s| {
                g.distances_from(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(UNREACHABLE))
                    .collect()
            })
            .collect();
        DistanceMatrix {
            n,
            d: rows.concat(),
        }
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Option<u32> {
        let d = self.d[u * self.n + v];
        (d != UNREACHABLE).then_some(d)
    }

    /// Distance for pairs known to be connected.
    pub fn at(&self, u: VertexId, v: VertexId) -> u32 {
        self.get(u, v).expect("vertices are connected")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Vertex sequence `v_0..v_n` whose length equals `d(v_0, v_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeodesicPath(pub Vec<VertexId>);

impl GeodesicPath {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn start(&self) -> VertexId {
        self.0[0]
    }

    pub fn end(&self) -> VertexId {
        *self.0.last().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodeticWitness {
    pub from: VertexId,
    pub to: VertexId,
    pub paths: [GeodesicPath; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodeticReport {
    pub geodetic: bool,
    pub witness: Option<GeodeticWitness>,
}

impl GeodeticWitness {
    pub(crate) fn into_error(self, g: &Graph) -> Error {
        Error::NotGeodetic {
            from: g.name(self.from).to_string(),
            to: g.name(self.to).to_string(),
            first: g.render(self.paths[0].vertices()),
            second: g.render(self.paths[1].vertices()),
        }
    }
}

/// Decides whether every pair of vertices is joined by exactly one geodesic.
/// On failure the witness is the first ambiguous `(root, target)` pair in
/// declaration order, with its two lexicographically smallest geodesics.
pub fn is_geodetic(g: &Graph) -> Result<GeodeticReport> {
    g.require_connected()?;
    let failing = g
        .vertices()
        .into_par_iter()
        .find_map_first(|root| {
            bfs_from(g, root)
                .ok()
                .and_then(|layers| layers.first_ambiguous())
                .map(|v| (root, v))
        });
    let Some((from, to)) = failing else {
        return Ok(GeodeticReport {
            geodetic: true,
            witness: None,
        });
    };
    let mut paths = enumerate_geodesics(g, from, to, 2)?.into_iter();
    let (Some(first), Some(second)) = (paths.next(), paths.next()) else {
        return Err(Error::Internal(format!(
            "saturating count reported several geodesics from {:?} to {:?} but enumeration found fewer",
            g.name(from),
            g.name(to)
        )));
    };
    Ok(GeodeticReport {
        geodetic: false,
        witness: Some(GeodeticWitness {
            from,
            to,
            paths: [first, second],
        }),
    })
}

/// Fails with [`Error::NotGeodetic`] unless `g` is connected and geodetic.
pub fn require_geodetic(g: &Graph) -> Result<()> {
    let report = is_geodetic(g)?;
    match report.witness {
        None => Ok(()),
        Some(w) => Err(w.into_error(g)),
    }
}

/// The unique geodesic `[u, v]`, oriented from `u` to `v`.
pub fn unique_geodesic(g: &Graph, u: VertexId, v: VertexId) -> Result<GeodesicPath> {
    g.check(v)?;
    let layers = bfs_from(g, u)?;
    match layers.count[v] {
        PathCount::Zero => Err(Error::Unreachable(
            g.name(u).to_string(),
            g.name(v).to_string(),
        )),
        PathCount::One => Ok(GeodesicPath(layers.unique_path_to(v))),
        PathCount::Many => {
            let paths = enumerate_geodesics(g, u, v, 2)?;
            Err(Error::AmbiguousGeodesic {
                from: g.name(u).to_string(),
                to: g.name(v).to_string(),
                first: g.render(paths[0].vertices()),
                second: g.render(paths[1].vertices()),
            })
        }
    }
}

/// All geodesics from `u` to `v` in lexicographic order, truncated at `cap`.
/// Unreachable targets give an empty list.
pub fn enumerate_geodesics(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    cap: usize,
) -> Result<Vec<GeodesicPath>> {
    g.check(u)?;
    g.check(v)?;
    if cap == 0 {
        return Err(Error::InvalidParameter("cap must be at least 1".into()));
    }
    // Distances to the target let the walk proceed forward from `u` in index
    // order, which yields paths lexicographically.
    let to_target = g.distances_from(v);
    let mut out = Vec::new();
    if to_target[u].is_none() {
        return Ok(out);
    }
    let mut path = vec![u];
    walk_geodesics(g, &to_target, &mut path, cap, &mut out);
    Ok(out)
}

fn walk_geodesics(
    g: &Graph,
    to_target: &[Option<u32>],
    path: &mut Vec<VertexId>,
    cap: usize,
    out: &mut Vec<GeodesicPath>,
) {
    let cur = *path.last().unwrap();
    let d = to_target[cur].unwrap();
    if d == 0 {
        out.push(GeodesicPath(path.clone()));
        return;
    }
    for &w in g.neighbors(cur) {
        if out.len() >= cap {
            return;
        }
        if to_target[w] == Some(d - 1) {
            path.push(w);
            walk_geodesics(g, to_target, path, cap, out);
            path.pop();
        }
    }
}

/// Whether `s` contains every geodesic between each pair of its vertices.
///
/// A vertex `w` lies on some `u`–`v` geodesic exactly when
/// `d(u, w) + d(w, v) = d(u, v)`, so the union of all geodesics is read off
/// the distance rows of `s` without enumerating paths.
pub fn is_convex(g: &Graph, s: &[VertexId]) -> Result<bool> {
    for &v in s {
        g.check(v)?;
    }
    let rows: Vec<Vec<Option<u32>>> = s.iter().map(|&v| g.distances_from(v)).collect();
    Ok(convex_from_rows(g.vertex_count(), s, |i, w| rows[i][w]))
}

/// [`is_convex`] against precomputed all-pairs distances.
pub fn is_convex_with(dm: &DistanceMatrix, s: &[VertexId]) -> bool {
    convex_from_rows(dm.len(), s, |i, w| dm.get(s[i], w))
}

fn convex_from_rows(
    n: usize,
    s: &[VertexId],
    dist: impl Fn(usize, VertexId) -> Option<u32>,
) -> bool {
    let mut inside = vec![false; n];
    for &v in s {
        inside[v] = true;
    }
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let Some(duv) = dist(i, s[j]) else {
                continue;
            };
            for w in 0..n {
                if inside[w] {
                    continue;
                }
                if let (Some(a), Some(b)) = (dist(i, w), dist(j, w)) {
                    if a + b == duv {
                        return false;
                    }
                }
            }
        }
    }
    true
}
