//! Isometrically embedded circuits (IECs).
//!
//! A circuit `v_0..v_n` with `v_0 = v_n` is an IEC when it is embedded and
//! `d(v_i, v_j) = min(j - i, n - j + i)` for all index pairs. IECs are
//! identified up to rotation and reflection through [`canonical_circuit`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_from, is_geodetic, DistanceMatrix, GeodesicPath, Graph, VertexId};

/// Closed vertex sequence `v_0..v_n`, `v_0 = v_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit(pub Vec<VertexId>);

impl Circuit {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Embedded: at least three edges and `v_0..v_{n-1}` pairwise distinct.
    pub fn is_embedded(&self) -> bool {
        let n = self.len();
        if n < 3 || self.0[0] != self.0[n] {
            return false;
        }
        let mut seen: Vec<VertexId> = self.0[..n].to_vec();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// An isometrically embedded circuit stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iec {
    canon: Vec<VertexId>,
}

impl Iec {
    /// Canonicalises an embedded circuit. Isometry is not checked.
    pub fn from_circuit(c: &Circuit) -> Result<Iec> {
        Ok(Iec {
            canon: canonical_circuit(c)?,
        })
    }

    /// Canonical closed sequence (first vertex repeated at the end).
    pub fn canon(&self) -> &[VertexId] {
        &self.canon
    }

    pub fn length(&self) -> usize {
        self.canon.len() - 1
    }

    /// The distinct vertices, in canonical cyclic order.
    pub fn cycle(&self) -> &[VertexId] {
        &self.canon[..self.length()]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.cycle().contains(&v)
    }

    /// Whether `{u, v}` is an edge of the circuit.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.canon
            .windows(2)
            .any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
    }

    pub fn as_circuit(&self) -> Circuit {
        Circuit(self.canon.clone())
    }
}

/// Deduplicated IECs ordered by canonical form, with a length histogram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IecInventory {
    pub iecs: Vec<Iec>,
    pub histogram: BTreeMap<usize, usize>,
    pub max_length: Option<usize>,
}

impl IecInventory {
    pub fn from_set(set: BTreeSet<Iec>) -> Self {
        let iecs: Vec<Iec> = set.into_iter().collect();
        let mut histogram = BTreeMap::new();
        for iec in &iecs {
            *histogram.entry(iec.length()).or_insert(0) += 1;
        }
        let max_length = histogram.keys().next_back().copied();
        IecInventory {
            iecs,
            histogram,
            max_length,
        }
    }

    pub fn len(&self) -> usize {
        self.iecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iecs.is_empty()
    }

    pub fn lengths(&self) -> BTreeSet<usize> {
        self.histogram.keys().copied().collect()
    }

    /// `n` such that every IEC has length at most `2n + 1`; zero when there
    /// are no IECs.
    pub fn half_bound(&self) -> usize {
        self.max_length.map_or(0, |m| m / 2)
    }

    pub fn to_report(&self, g: &Graph) -> InventoryReport {
        InventoryReport {
            iecs: self.iecs.iter().map(|c| g.render(c.canon())).collect(),
            histogram: self.histogram.clone(),
            max_length: self.max_length,
        }
    }
}

/// JSON form of an [`IecInventory`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InventoryReport {
    pub iecs: Vec<Vec<String>>,
    pub histogram: BTreeMap<usize, usize>,
    pub max_length: Option<usize>,
}

fn check_circuit(g: &Graph, c: &Circuit) -> Result<()> {
    for &v in c.vertices() {
        g.check(v)?;
    }
    let n = c.len();
    if n < 2 || c.0[0] != c.0[n] {
        return Err(Error::InvalidCircuit(format!(
            "{:?} is not closed with at least two edges",
            g.render(c.vertices())
        )));
    }
    if let Some(w) = c.0.windows(2).find(|w| !g.adjacent(w[0], w[1])) {
        return Err(Error::InvalidCircuit(format!(
            "{:?} and {:?} are not adjacent",
            g.name(w[0]),
            g.name(w[1])
        )));
    }
    Ok(())
}

fn isometric(c: &[VertexId], dist: impl Fn(VertexId, VertexId) -> Option<u32>) -> bool {
    let n = c.len() - 1;
    for i in 0..n {
        for j in i + 1..n {
            let want = (j - i).min(n - j + i) as u32;
            if dist(c[i], c[j]) != Some(want) {
                return false;
            }
        }
    }
    true
}

/// Whether the circuit is embedded and isometric.
pub fn is_iec(g: &Graph, c: &Circuit) -> Result<bool> {
    check_circuit(g, c)?;
    if !c.is_embedded() {
        return Ok(false);
    }
    let n = c.len();
    let rows: Vec<Vec<Option<u32>>> = c.0[..n].iter().map(|&v| g.distances_from(v)).collect();
    Ok(isometric(c.vertices(), |u, v| {
        let i = c.0.iter().position(|&x| x == u).unwrap();
        rows[i][v]
    }))
}

/// [`is_iec`] against precomputed distances; the circuit must already be a
/// closed walk in the graph.
pub fn is_iec_with(dm: &DistanceMatrix, c: &Circuit) -> bool {
    c.is_embedded() && isometric(c.vertices(), |u, v| dm.get(u, v))
}

/// Minimal closed sequence over all rotations and reflections.
pub fn canonical_circuit(c: &Circuit) -> Result<Vec<VertexId>> {
    if !c.is_embedded() {
        return Err(Error::InvalidCircuit(format!(
            "{:?} is not an embedded circuit",
            c.vertices()
        )));
    }
    Ok(canonical_unchecked(&c.0[..c.len()]))
}

/// Canonical form of an embedded cycle given without its closing vertex.
fn canonical_unchecked(cycle: &[VertexId]) -> Vec<VertexId> {
    let n = cycle.len();
    let (start, _) = cycle.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
    // Vertices are distinct, so the minimum vertex must lead; only its two
    // orientations remain.
    let forward: Vec<VertexId> = (0..n).map(|k| cycle[(start + k) % n]).collect();
    let backward: Vec<VertexId> = (0..n).map(|k| cycle[(start + n - k) % n]).collect();
    let mut best = forward.min(backward);
    best.push(best[0]);
    best
}

/// Builds the IEC closed by a fork of two geodesics whose endpoints are
/// adjacent: `[α(0), …, α(n), β(n), …, β(0)]`.
pub fn iec_from_fork(g: &Graph, alpha: &GeodesicPath, beta: &GeodesicPath) -> Result<Iec> {
    for (label, p) in [("alpha", alpha), ("beta", beta)] {
        if p.is_empty() {
            return Err(Error::Precondition(format!("{label} has no edges")));
        }
        if !g.is_geodesic(p.vertices()) {
            return Err(Error::Precondition(format!(
                "{label} {:?} is not a geodesic",
                g.render(p.vertices())
            )));
        }
    }
    if alpha.start() != beta.start() {
        return Err(Error::Precondition(format!(
            "fork paths start at {:?} and {:?}",
            g.name(alpha.start()),
            g.name(beta.start())
        )));
    }
    if alpha.0[1] == beta.0[1] {
        return Err(Error::Precondition(format!(
            "fork paths share their second vertex {:?}",
            g.name(alpha.0[1])
        )));
    }
    if !g.adjacent(alpha.end(), beta.end()) {
        return Err(Error::Precondition(format!(
            "fork endpoints {:?} and {:?} are not adjacent",
            g.name(alpha.end()),
            g.name(beta.end())
        )));
    }
    if alpha.len() != beta.len() {
        return Err(Error::Internal(format!(
            "fork arms have lengths {} and {}; the graph is not geodetic",
            alpha.len(),
            beta.len()
        )));
    }
    let circuit = fork_circuit(alpha.vertices(), beta.vertices());
    if !is_iec(g, &circuit)? {
        return Err(Error::Internal(format!(
            "fork closure {:?} is not isometrically embedded; the graph is not geodetic",
            g.render(circuit.vertices())
        )));
    }
    Ok(Iec {
        canon: canonical_unchecked(&circuit.0[..circuit.len()]),
    })
}

fn fork_circuit(alpha: &[VertexId], beta: &[VertexId]) -> Circuit {
    let mut seq = alpha.to_vec();
    seq.extend(beta.iter().rev());
    Circuit(seq)
}

/// Every IEC of a geodetic graph, found as fork closures.
///
/// For each root `x` and each edge `{u, v}` with `d(x, u) = d(x, v)`, the
/// geodesics `[x, u]` and `[x, v]` are cut back to their last common vertex
/// and closed through the edge. Every IEC of length `2n + 1` is produced
/// this way from the vertex opposite each of its edges.
pub fn enumerate_iecs_geodetic(g: &Graph) -> Result<IecInventory> {
    let report = is_geodetic(g)?;
    if let Some(w) = report.witness {
        return Err(w.into_error(g));
    }
    let dm = DistanceMatrix::new(g);
    let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    let per_root: Vec<BTreeSet<Iec>> = g
        .vertices()
        .into_par_iter()
        .map(|root| -> Result<BTreeSet<Iec>> {
            let layers = bfs_from(g, root)?;
            let path_to = |v: VertexId| {
                let mut p = vec![v];
                let mut cur = v;
                while cur != root {
                    cur = layers.preds[cur][0];
                    p.push(cur);
                }
                p.reverse();
                p
            };
            let mut found = BTreeSet::new();
            for &(u, v) in &edges {
                if layers.dist[u] != layers.dist[v] {
                    continue;
                }
                let pu = path_to(u);
                let pv = path_to(v);
                let split = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count() - 1;
                let circuit = fork_circuit(&pu[split..], &pv[split..]);
                let iec = Iec {
                    canon: canonical_unchecked(&circuit.0[..circuit.len()]),
                };
                if found.contains(&iec) {
                    continue;
                }
                if !is_iec_with(&dm, &circuit) {
                    return Err(Error::Internal(format!(
                        "fork closure {:?} is not isometrically embedded",
                        g.render(circuit.vertices())
                    )));
                }
                found.insert(iec);
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(IecInventory::from_set(per_root.into_iter().flatten().collect()))
}

/// Admissible circuit lengths for a partial path, narrowed as vertices are
/// appended.
#[derive(Debug, Clone, Copy)]
struct LengthWindow {
    lo: usize,
    hi: usize,
    exact: Option<usize>,
}

impl LengthWindow {
    fn feasible(&self) -> bool {
        match self.exact {
            Some(n) => self.lo <= n && n <= self.hi,
            None => self.lo <= self.hi,
        }
    }

    fn admits(&self, n: usize) -> bool {
        self.lo <= n && n <= self.hi && self.exact.is_none_or(|e| e == n)
    }
}

/// Exhaustive search for IECs of length at most `max_len`.
///
/// Partial paths are pruned as soon as some pair of their vertices rules
/// out every circuit length: a pair at path distance `k` and graph distance
/// `k` needs `n ≥ 2k`, and a pair at graph distance `d < k` forces `n = d + k`.
pub fn enumerate_iecs_bruteforce(g: &Graph, max_len: usize) -> Result<IecInventory> {
    if max_len < 3 {
        return Err(Error::InvalidParameter(format!(
            "max_len must be at least 3, got {max_len}"
        )));
    }
    let dm = DistanceMatrix::new(g);
    let found: Vec<BTreeSet<Iec>> = g
        .vertices()
        .into_par_iter()
        .map(|s| {
            let mut out = BTreeSet::new();
            let mut path = vec![s];
            let window = LengthWindow {
                lo: 3,
                hi: max_len,
                exact: None,
            };
            extend_circuit(g, &dm, &mut path, window, &mut out);
            out
        })
        .collect();
    Ok(IecInventory::from_set(found.into_iter().flatten().collect()))
}

fn extend_circuit(
    g: &Graph,
    dm: &DistanceMatrix,
    path: &mut Vec<VertexId>,
    window: LengthWindow,
    out: &mut BTreeSet<Iec>,
) {
    let start = path[0];
    let last = *path.last().unwrap();
    let k = path.len(); // index of the vertex about to be appended
    for &w in g.neighbors(last) {
        if w == start && k >= 3 && window.admits(k) {
            let mut closed = path.clone();
            closed.push(start);
            let circuit = Circuit(closed);
            if is_iec_with(dm, &circuit) {
                out.insert(Iec {
                    canon: canonical_unchecked(path),
                });
            }
            continue;
        }
        if w <= start || path.contains(&w) || k + 1 > window.hi {
            continue;
        }
        let mut next = window;
        next.lo = next.lo.max(k + 1);
        let mut ok = true;
        for (i, &p) in path.iter().enumerate() {
            let gap = k - i;
            let Some(d) = dm.get(p, w).map(|d| d as usize) else {
                ok = false;
                break;
            };
            if d == gap {
                next.lo = next.lo.max(2 * gap);
            } else {
                let n = d + gap;
                if next.exact.is_some_and(|e| e != n) {
                    ok = false;
                    break;
                }
                next.exact = Some(n);
            }
            if !next.feasible() {
                ok = false;
                break;
            }
        }
        if ok && next.feasible() {
            path.push(w);
            extend_circuit(g, dm, path, next, out);
            path.pop();
        }
    }
}
