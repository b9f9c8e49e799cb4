//! Geodesic spanning trees and the tree quasi-isometry certificate.
//!
//! In a geodetic graph whose IECs have length at most `2n + 1`, the identity
//! map onto the geodesic spanning tree `T_o` satisfies
//! `d_Γ(v, w) ≤ d_T(v, w) ≤ 2n·d_Γ(v, w)`. The upper bound is witnessed
//! constructively by [`QiContext::lift`], which replaces each non-tree edge of
//! a geodesic by the two tree geodesics through the apex of its IEC.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_from, require_geodetic, DistanceMatrix, GeodesicPath, Graph, VertexId};
use crate::iec::{enumerate_iecs_geodetic, is_iec_with, Circuit, IecInventory};

/// `T_o`: the union of the unique geodesics `[o, v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicSpanningTree {
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub depth: Vec<u32>,
}

impl GeodesicSpanningTree {
    /// Assumes every vertex has a unique geodesic from `root`.
    fn from_bfs(g: &Graph, root: VertexId) -> Result<Self> {
        let layers = bfs_from(g, root)?;
        let parent = layers.preds.iter().map(|p| p.first().copied()).collect();
        let depth = layers
            .dist
            .iter()
            .map(|d| d.ok_or_else(|| Error::Internal("tree over a disconnected graph".into())))
            .collect::<Result<_>>()?;
        Ok(GeodesicSpanningTree {
            root,
            parent,
            depth,
        })
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.parent[u] == Some(v) || self.parent[v] == Some(u)
    }

    pub fn edge_count(&self) -> usize {
        self.parent.iter().flatten().count()
    }

    /// `[o, v]` read from the root.
    pub fn root_path(&self, v: VertexId) -> Vec<VertexId> {
        let mut p = self.climb(v, self.root);
        p.reverse();
        p
    }

    /// Tree path from `v` up to its ancestor `a`, inclusive.
    fn climb(&self, v: VertexId, a: VertexId) -> Vec<VertexId> {
        let mut p = vec![v];
        let mut cur = v;
        while cur != a {
            cur = self.parent[cur].expect("ancestor lies on the root path");
            p.push(cur);
        }
        p
    }

    /// Deepest common vertex of `[o, u]` and `[o, v]`.
    pub fn meet(&self, u: VertexId, v: VertexId) -> VertexId {
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> u32 {
        let m = self.meet(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[m]
    }

    /// Tree path from `u` to `v` through their meet.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let m = self.meet(u, v);
        let mut p = self.climb(u, m);
        let mut down = self.climb(v, m);
        down.pop();
        down.reverse();
        p.extend(down);
        p
    }
}

/// Builds `T_o` after checking that the graph is geodetic.
pub fn geodesic_spanning_tree(g: &Graph, o: VertexId) -> Result<GeodesicSpanningTree> {
    g.check(o)?;
    require_geodetic(g)?;
    GeodesicSpanningTree::from_bfs(g, o)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPath {
    pub tree_path: Vec<VertexId>,
    pub source_geodesic: GeodesicPath,
    /// Apex `u` used for each non-tree edge, in order along the geodesic.
    pub splice_points: Vec<VertexId>,
    /// `[u, x_i] * e * [x_{i+1}, u]` for each spliced edge `e`.
    pub closures: Vec<Circuit>,
}

impl LiftedPath {
    pub fn len(&self) -> usize {
        self.tree_path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionReport {
    pub root: VertexId,
    pub n: usize,
    /// `max(1, 2n)`; trees have no IECs and are their own spanning tree.
    pub lambda: usize,
    pub max_ratio: Ratio<u64>,
    pub bound_satisfied: bool,
    pub worst_pair: Option<(VertexId, VertexId)>,
}

/// JSON form of a [`DistortionReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistortionJson {
    pub root: String,
    pub n: usize,
    pub lambda: usize,
    pub max_ratio: String,
    pub worst_pair: Option<[String; 2]>,
    pub bound_satisfied: bool,
}

impl DistortionReport {
    pub fn to_json(&self, g: &Graph) -> DistortionJson {
        DistortionJson {
            root: g.name(self.root).to_string(),
            n: self.n,
            lambda: self.lambda,
            max_ratio: format!("{}/{}", self.max_ratio.numer(), self.max_ratio.denom()),
            worst_pair: self
                .worst_pair
                .map(|(v, w)| [g.name(v).to_string(), g.name(w).to_string()]),
            bound_satisfied: self.bound_satisfied,
        }
    }
}

/// Shared data for certifying one geodetic graph from any root.
#[derive(Debug, Clone)]
pub struct QiContext<'g> {
    g: &'g Graph,
    dm: DistanceMatrix,
    inventory: IecInventory,
}

impl<'g> QiContext<'g> {
    /// Checks geodeticity and enumerates the IECs.
    pub fn new(g: &'g Graph) -> Result<Self> {
        let inventory = enumerate_iecs_geodetic(g)?;
        Ok(QiContext {
            g,
            dm: DistanceMatrix::new(g),
            inventory,
        })
    }

    pub fn inventory(&self) -> &IecInventory {
        &self.inventory
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dm
    }

    pub fn n(&self) -> usize {
        self.inventory.half_bound()
    }

    pub fn lambda(&self) -> usize {
        (2 * self.n()).max(1)
    }

    pub fn tree(&self, o: VertexId) -> Result<GeodesicSpanningTree> {
        self.g.check(o)?;
        GeodesicSpanningTree::from_bfs(self.g, o)
    }

    /// Replaces each non-tree edge `(x_i, x_{i+1})` of `gamma` with
    /// `[x_i, u] * [u, x_{i+1}]`, `u` the meet of the two root geodesics.
    pub fn lift(&self, t: &GeodesicSpanningTree, gamma: &GeodesicPath) -> Result<LiftedPath> {
        let xs = gamma.vertices();
        let Some(&first) = xs.first() else {
            return Err(Error::NotGeodesic("empty path".into()));
        };
        if xs.iter().any(|&v| v >= self.g.vertex_count())
            || xs.windows(2).any(|w| !self.g.adjacent(w[0], w[1]))
            || self.dm.get(first, *xs.last().unwrap()) != Some(gamma.len() as u32)
        {
            return Err(Error::NotGeodesic(format!(
                "{:?}",
                xs.iter()
                    .map(|&v| self.g.names().get(v).cloned().unwrap_or_else(|| format!("#{v}")))
                    .collect::<Vec<_>>()
            )));
        }
        let mut tree_path = vec![first];
        let mut splice_points = Vec::new();
        let mut closures = Vec::new();
        for w in xs.windows(2) {
            let (a, b) = (w[0], w[1]);
            if t.contains_edge(a, b) {
                tree_path.push(b);
                continue;
            }
            let u = t.meet(a, b);
            let up = t.climb(a, u);
            let mut down = t.climb(b, u);
            // Closed circuit u .. a, b .. u.
            let mut closure: Vec<VertexId> = up.iter().rev().copied().collect();
            closure.extend(down.iter().copied());
            let closure = Circuit(closure);
            if !is_iec_with(&self.dm, &closure) {
                return Err(Error::Internal(format!(
                    "splice closure {:?} is not an IEC",
                    self.g.render(closure.vertices())
                )));
            }
            tree_path.extend(up.iter().skip(1));
            down.pop();
            down.reverse();
            tree_path.extend(down);
            splice_points.push(u);
            closures.push(closure);
        }
        let lifted = LiftedPath {
            tree_path,
            source_geodesic: gamma.clone(),
            splice_points,
            closures,
        };
        if lifted.len() > self.lambda() * gamma.len() {
            return Err(Error::Internal(format!(
                "lifted path of length {} exceeds {} times {}",
                lifted.len(),
                self.lambda(),
                gamma.len()
            )));
        }
        Ok(lifted)
    }

    /// Exact maximum of `d_T / d_Γ` over all vertex pairs.
    pub fn distortion(&self, o: VertexId) -> Result<DistortionReport> {
        let t = self.tree(o)?;
        let mut max_ratio = Ratio::from_integer(1u64);
        let mut worst_pair = None;
        for v in self.g.vertices() {
            for w in v + 1..self.g.vertex_count() {
                let dg = self.dm.at(v, w) as u64;
                let dt = t.distance(v, w) as u64;
                if dt < dg {
                    return Err(Error::Internal(format!(
                        "tree distance {dt} below graph distance {dg} for {:?}, {:?}",
                        self.g.name(v),
                        self.g.name(w)
                    )));
                }
                let r = Ratio::new(dt, dg);
                if worst_pair.is_none() || r > max_ratio {
                    max_ratio = r;
                    worst_pair = Some((v, w));
                }
            }
        }
        let lambda = self.lambda();
        Ok(DistortionReport {
            root: o,
            n: self.n(),
            lambda,
            max_ratio,
            bound_satisfied: max_ratio <= Ratio::from_integer(lambda as u64),
            worst_pair,
        })
    }
}

/// [`QiContext::lift`] for a one-off query.
pub fn lift_path(g: &Graph, t: &GeodesicSpanningTree, gamma: &GeodesicPath) -> Result<LiftedPath> {
    QiContext::new(g)?.lift(t, gamma)
}

/// [`QiContext::distortion`] for a one-off query.
pub fn distortion_report(g: &Graph, o: VertexId) -> Result<DistortionReport> {
    QiContext::new(g)?.distortion(o)
}
