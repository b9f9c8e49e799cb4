//! Finite-horizon geodesic-boundary tools.
//!
//! Geodesic rays are represented by finite prefixes. Busemann functions are
//! traced along a prefix and declared stable once constant over a window;
//! failing to stabilise within the horizon is reported as inconclusive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{unique_geodesic, DistanceMatrix, Graph, VertexId};
use crate::iec::{Iec, IecInventory};

pub const DEFAULT_WINDOW: usize = 3;

/// Geodesic prefix `v_0..v_T` of a ray based at `v_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayPrefix {
    seq: Vec<VertexId>,
}

impl RayPrefix {
    pub fn base(&self) -> VertexId {
        self.seq[0]
    }

    pub fn horizon(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn seq(&self) -> &[VertexId] {
        &self.seq
    }

    pub fn at(&self, t: usize) -> VertexId {
        self.seq[t]
    }

    pub fn to_json(&self, g: &Graph) -> RayJson {
        RayJson {
            base: g.name(self.base()).to_string(),
            horizon: self.horizon(),
            seq: g.render(&self.seq),
        }
    }
}

/// `{"base": v, "horizon": T, "seq": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayJson {
    pub base: String,
    pub horizon: usize,
    pub seq: Vec<String>,
}

impl RayJson {
    /// Resolves names and validates the prefix; `base` and `horizon` must
    /// agree with `seq`.
    pub fn resolve(&self, g: &Graph) -> Result<RayPrefix> {
        let seq = self
            .seq
            .iter()
            .map(|v| g.vertex(v))
            .collect::<Result<Vec<_>>>()?;
        if self.seq.first() != Some(&self.base) {
            return Err(Error::Parse(format!(
                "ray base {:?} does not start the sequence",
                self.base
            )));
        }
        if self.horizon + 1 != seq.len() {
            return Err(Error::Parse(format!(
                "ray horizon {} does not match {} vertices",
                self.horizon,
                seq.len()
            )));
        }
        validate_ray_prefix(g, &seq)
    }
}

/// Accepts `seq` when `d(v_0, v_t) = t` for every `t` along consecutive
/// edges.
pub fn validate_ray_prefix(g: &Graph, seq: &[VertexId]) -> Result<RayPrefix> {
    let Some(&base) = seq.first() else {
        return Err(Error::NotGeodesic("empty ray prefix".into()));
    };
    for &v in seq {
        g.check(v)?;
    }
    let dist = g.distances_from(base);
    for (t, w) in seq.windows(2).enumerate() {
        let t = t + 1;
        if !g.adjacent(w[0], w[1]) || dist[w[1]] != Some(t as u32) {
            return Err(Error::NotGeodesic(format!(
                "ray prefix fails at t={t}: {:?} is at distance {:?} from {:?}",
                g.name(w[1]),
                dist[w[1]],
                g.name(base)
            )));
        }
    }
    Ok(RayPrefix { seq: seq.to_vec() })
}

/// `f(t) = d(x, γ(t)) − t` along a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusemannTrace {
    pub values: Vec<i64>,
    pub window: usize,
    /// Start of the final constant run, when that run spans at least
    /// `window` steps.
    pub stable_from: Option<usize>,
    pub limit: Option<i64>,
}

pub fn busemann_trace(g: &Graph, gamma: &RayPrefix, x: VertexId, window: usize) -> Result<BusemannTrace> {
    g.check(x)?;
    if window < 1 {
        return Err(Error::InvalidParameter("window must be at least 1".into()));
    }
    let dist = g.distances_from(x);
    let values = gamma
        .seq
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            dist[v]
                .map(|d| d as i64 - t as i64)
                .ok_or_else(|| Error::Unreachable(g.name(x).to_string(), g.name(v).to_string()))
        })
        .collect::<Result<Vec<i64>>>()?;
    let floor = -values[0];
    for (t, &f) in values.iter().enumerate() {
        if f < floor {
            return Err(Error::Internal(format!(
                "Busemann trace {f} at t={t} is below -d(x, γ(0)) = {floor}"
            )));
        }
        if t > 0 && f > values[t - 1] {
            return Err(Error::Internal(format!(
                "Busemann trace increases at t={t}: {} -> {f}",
                values[t - 1]
            )));
        }
    }
    let horizon = values.len() - 1;
    let last = values[horizon];
    let run_start = values.iter().rposition(|&f| f != last).map_or(0, |i| i + 1);
    let stable_from = (horizon - run_start >= window).then_some(run_start);
    Ok(BusemannTrace {
        values,
        window,
        stable_from,
        limit: stable_from.map(|_| last),
    })
}

/// A rebased ray together with the index `t₀` of the input prefix where the
/// two agree from then on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebasedRay {
    pub ray: RayPrefix,
    pub pivot: usize,
}

/// `[o, γ(t₀)] * γ|[t₀, T]`, with `t₀` the start of the stable run of the
/// Busemann trace of `γ` at `o`. The connecting geodesic must be unique.
pub fn rebase_ray(g: &Graph, gamma: &RayPrefix, o: VertexId, window: usize) -> Result<RebasedRay> {
    let trace = busemann_trace(g, gamma, o, window)?;
    let Some(t0) = trace.stable_from else {
        return Err(Error::HorizonTooShort(format!(
            "Busemann trace at {:?} not constant over {window} steps within horizon {}",
            g.name(o),
            gamma.horizon()
        )));
    };
    let mut seq = unique_geodesic(g, o, gamma.seq[t0])?.0;
    seq.extend_from_slice(&gamma.seq[t0 + 1..]);
    let ray = validate_ray_prefix(g, &seq).map_err(|e| {
        Error::Internal(format!("rebased sequence is not a geodesic prefix: {e}"))
    })?;
    Ok(RebasedRay { ray, pivot: t0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coincidence {
    /// Largest `r` with `a(i) = b(i)` for all `i ≤ r`.
    Radius(usize),
    /// Equal up to the shorter horizon.
    Full { horizon: usize },
}

pub fn coincidence_radius(a: &RayPrefix, b: &RayPrefix) -> Result<Coincidence> {
    if a.base() != b.base() {
        return Err(Error::Precondition("ray prefixes have different bases".into()));
    }
    let horizon = a.horizon().min(b.horizon());
    match (0..=horizon).find(|&i| a.seq[i] != b.seq[i]) {
        Some(i) => Ok(Coincidence::Radius(i - 1)),
        None => Ok(Coincidence::Full { horizon }),
    }
}

/// A graph with rays of finite length glued at chosen vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayExtension {
    pub graph: Graph,
    /// Number of edges in every attached ray.
    pub truncation: usize,
    /// Attach vertex followed by its ray, as vertices of `graph`.
    pub rays: Vec<Vec<VertexId>>,
}

/// Glues a path of `length` edges at each attach vertex. Fresh vertices are
/// named `<attach>~<i>`, primed until unused.
pub fn ray_extend(g: &Graph, attach: &[VertexId], length: usize) -> Result<RayExtension> {
    if length < 1 {
        return Err(Error::InvalidParameter("ray length must be at least 1".into()));
    }
    let mut attach = attach.to_vec();
    for &a in &attach {
        g.check(a)?;
    }
    attach.sort_unstable();
    attach.dedup();
    let mut h = g.clone();
    let mut rays = Vec::new();
    for &a in &attach {
        let mut ray = vec![a];
        for i in 1..=length {
            let mut name = format!("{}~{i}", g.name(a));
            while h.id(&name).is_some() {
                name.push('\'');
            }
            let v = h.push_vertex(&name)?;
            h.push_edge(*ray.last().unwrap(), v)?;
            ray.push(v);
        }
        rays.push(ray);
    }
    h.finish();
    Ok(RayExtension {
        graph: h,
        truncation: length,
        rays,
    })
}

/// Finite piece of an onion: spine `s_k..s_0 r_0..r_k` and distinct IECs
/// with `[s_i, r_i]` on `Θ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnionPrefix {
    pub r: Vec<VertexId>,
    pub s: Vec<VertexId>,
    pub thetas: Vec<Iec>,
}

/// `{"depth": k, "r": [...], "s": [...], "thetas": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OnionJson {
    pub depth: usize,
    pub r: Vec<String>,
    pub s: Vec<String>,
    pub thetas: Vec<Vec<String>>,
}

impl OnionPrefix {
    pub fn depth(&self) -> usize {
        self.r.len() - 1
    }

    /// `s_i, …, s_0, r_0, …, r_i`.
    pub fn spine(&self, i: usize) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.s[..=i].iter().rev().copied().collect();
        v.extend_from_slice(&self.r[..=i]);
        v
    }

    pub fn to_json(&self, g: &Graph) -> OnionJson {
        OnionJson {
            depth: self.depth(),
            r: g.render(&self.r),
            s: g.render(&self.s),
            thetas: self.thetas.iter().map(|t| g.render(t.canon())).collect(),
        }
    }
}

fn path_on(theta: &Iec, path: &[VertexId]) -> bool {
    path.windows(2).all(|w| theta.has_edge(w[0], w[1]))
}

/// Re-checks every onion-prefix invariant from scratch.
pub fn check_onion_prefix(g: &Graph, p: &OnionPrefix) -> Result<()> {
    let k = p.r.len();
    if k == 0 || p.s.len() != k || p.thetas.len() != k {
        return Err(Error::Precondition("onion prefix arrays have mismatched lengths".into()));
    }
    let spine = p.spine(k - 1);
    if !g.is_geodesic(&spine) {
        return Err(Error::Precondition(format!(
            "onion spine {:?} is not a geodesic",
            g.render(&spine)
        )));
    }
    for i in 0..k {
        if !path_on(&p.thetas[i], &p.spine(i)) {
            return Err(Error::Precondition(format!("Θ_{i} does not contain [s_{i}, r_{i}]")));
        }
        if !crate::iec::is_iec(g, &p.thetas[i].as_circuit())? {
            return Err(Error::Precondition(format!("Θ_{i} is not an IEC")));
        }
        if p.thetas[..i].contains(&p.thetas[i]) {
            return Err(Error::Precondition(format!("Θ_{i} repeats an earlier IEC")));
        }
    }
    Ok(())
}

/// Depth-first search for the deepest onion prefix, up to `max_depth`.
///
/// Central edges `(s_0, r_0)` with `s_0 < r_0` are tried in edge order (or in
/// the order given by `central`); each step extends the spine by neighbours
/// in index order and picks the first unused IEC containing it. The first
/// prefix of maximal depth wins. `None` means no IEC covers any central edge.
pub fn find_onion_prefix(
    g: &Graph,
    inv: &IecInventory,
    max_depth: usize,
    central: Option<&[(VertexId, VertexId)]>,
) -> Result<Option<OnionPrefix>> {
    let dm = DistanceMatrix::new(g);
    let edges: Vec<(VertexId, VertexId)> = match central {
        Some(list) => {
            for &(u, v) in list {
                g.check(u)?;
                g.check(v)?;
                if !g.adjacent(u, v) {
                    return Err(Error::Precondition(format!(
                        "central pair {:?}-{:?} is not an edge",
                        g.name(u),
                        g.name(v)
                    )));
                }
            }
            list.to_vec()
        }
        None => g.edges().collect(),
    };
    let mut best: Option<OnionPrefix> = None;
    for (s0, r0) in edges {
        for theta in &inv.iecs {
            if !theta.has_edge(s0, r0) {
                continue;
            }
            let mut cur = OnionPrefix {
                r: vec![r0],
                s: vec![s0],
                thetas: vec![theta.clone()],
            };
            grow_onion(g, &dm, inv, max_depth, &mut cur, &mut best);
            if best.as_ref().is_some_and(|b| b.depth() == max_depth) {
                return Ok(best);
            }
        }
    }
    Ok(best)
}

fn grow_onion(
    g: &Graph,
    dm: &DistanceMatrix,
    inv: &IecInventory,
    max_depth: usize,
    cur: &mut OnionPrefix,
    best: &mut Option<OnionPrefix>,
) {
    if best.as_ref().is_none_or(|b| cur.depth() > b.depth()) {
        *best = Some(cur.clone());
    }
    let i = cur.depth() + 1;
    if i > max_depth {
        return;
    }
    let (sp, rp) = (cur.s[i - 1], cur.r[i - 1]);
    for &si in g.neighbors(sp) {
        for &ri in g.neighbors(rp) {
            if dm.get(si, ri) != Some(2 * i as u32 + 1) {
                continue;
            }
            cur.s.push(si);
            cur.r.push(ri);
            let spine = cur.spine(i);
            for theta in &inv.iecs {
                if cur.thetas.contains(theta) || !path_on(theta, &spine) {
                    continue;
                }
                cur.thetas.push(theta.clone());
                grow_onion(g, dm, inv, max_depth, cur, best);
                cur.thetas.pop();
                if best.as_ref().is_some_and(|b| b.depth() == max_depth) {
                    break;
                }
            }
            cur.s.pop();
            cur.r.pop();
            if best.as_ref().is_some_and(|b| b.depth() == max_depth) {
                return;
            }
        }
    }
}

/// For each `Θ_i`, the vertex of `Θ_i` equidistant from `r_0` and `s_0`.
pub fn onion_apexes(g: &Graph, p: &OnionPrefix) -> Result<Vec<VertexId>> {
    let (r0, s0) = (p.r[0], p.s[0]);
    let dr = g.distances_from(r0);
    let ds = g.distances_from(s0);
    p.thetas
        .iter()
        .enumerate()
        .map(|(i, theta)| {
            if theta.length() % 2 == 0 {
                return Err(Error::Precondition(format!(
                    "Θ_{i} has even length {}; its midpoint is not a vertex",
                    theta.length()
                )));
            }
            let apexes: Vec<VertexId> = theta
                .cycle()
                .iter()
                .copied()
                .filter(|&v| dr[v].is_some() && dr[v] == ds[v])
                .collect();
            match apexes.as_slice() {
                [a] => Ok(*a),
                _ => Err(Error::Precondition(format!(
                    "Θ_{i} has {} vertices equidistant from r_0 and s_0",
                    apexes.len()
                ))),
            }
        })
        .collect()
}
