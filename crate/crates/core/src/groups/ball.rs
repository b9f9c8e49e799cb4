//! Balls in Cayley graphs of free products, with generator-labelled edges.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupSpec};
use crate::alphabet::{GeneratorAlphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFile, VertexId};

/// Induced subgraph of `Cay(G, Σ)` on the elements of word length at most
/// `radius`. Vertex 0 is the identity; vertices are numbered in BFS
/// discovery order with generators tried in alphabet order.
#[derive(Debug, Clone)]
pub struct LabeledBall {
    pub radius: usize,
    pub graph: Graph,
    pub alphabet: GeneratorAlphabet,
    pub elements: Vec<GroupElement>,
    /// `step[v][l]` is the vertex `v·l` when it lies in the ball.
    step: Vec<Vec<Option<VertexId>>>,
    depth: Vec<usize>,
    index: HashMap<GroupElement, VertexId>,
}

/// Result of reading a word from the identity inside a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    Vertex(VertexId),
    /// The prefix of this many letters is the first to leave the ball.
    OutOfBall { prefix: usize },
}

/// Graph format plus the radius and one `[u, v, token]` label per direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallFile {
    pub radius: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub labels: Vec<[String; 3]>,
}

impl BallFile {
    /// The underlying graph; labels are checked to sit on edges and to pair
    /// up in both directions.
    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::from_file(&GraphFile {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        })?;
        let mut seen: HashMap<(VertexId, VertexId), &str> = HashMap::new();
        for [u, v, t] in &self.labels {
            let (u, v) = (g.vertex(u)?, g.vertex(v)?);
            if !g.adjacent(u, v) {
                return Err(Error::Parse(format!(
                    "label on non-edge {:?}-{:?}",
                    g.name(u),
                    g.name(v)
                )));
            }
            if seen.insert((u, v), t).is_some() {
                return Err(Error::Parse(format!(
                    "edge {:?}->{:?} labelled twice",
                    g.name(u),
                    g.name(v)
                )));
            }
        }
        if let Some((&(u, v), _)) = seen.iter().find(|(&(u, v), _)| !seen.contains_key(&(v, u))) {
            return Err(Error::Parse(format!(
                "edge {:?}->{:?} has no reverse label",
                g.name(u),
                g.name(v)
            )));
        }
        Ok(g)
    }
}

impl LabeledBall {
    pub fn identity(&self) -> VertexId {
        0
    }

    /// Word length of each vertex, as found by the construction.
    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v]
    }

    pub fn step(&self, v: VertexId, l: Letter) -> Option<VertexId> {
        self.step[v][l]
    }

    /// Label of the directed edge `u -> v`.
    pub fn label(&self, u: VertexId, v: VertexId) -> Option<Letter> {
        self.step[u].iter().position(|&x| x == Some(v))
    }

    /// Every directed labelled edge `(u, v, l)` with `u·l = v`, ordered by
    /// `u` then letter.
    pub fn labels(&self) -> impl Iterator<Item = (VertexId, VertexId, Letter)> + '_ {
        self.step.iter().enumerate().flat_map(|(u, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(l, v)| v.map(|v| (u, v, l)))
        })
    }

    pub fn vertex_of(&self, e: &GroupElement) -> Option<VertexId> {
        self.index.get(e).copied()
    }

    /// Labels read along a vertex sequence.
    pub fn read_labels(&self, path: &[VertexId]) -> Option<Word> {
        path.windows(2)
            .map(|w| self.label(w[0], w[1]))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn to_file(&self) -> BallFile {
        let gf = self.graph.to_file();
        BallFile {
            radius: self.radius,
            vertices: gf.vertices,
            edges: gf.edges,
            labels: self
                .labels()
                .map(|(u, v, l)| {
                    [
                        self.graph.name(u).to_string(),
                        self.graph.name(v).to_string(),
                        self.alphabet.symbol(l).to_string(),
                    ]
                })
                .collect(),
        }
    }
}

pub fn cayley_ball(spec: &GroupSpec, radius: usize) -> Result<LabeledBall> {
    if radius < 1 {
        return Err(Error::InvalidParameter("ball radius must be at least 1".into()));
    }
    let alphabet = spec.alphabet().clone();
    let mut elements = vec![GroupElement::identity()];
    let mut depth = vec![0usize];
    let mut index: HashMap<GroupElement, VertexId> = HashMap::from([(GroupElement::identity(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if depth[u] == radius {
            continue;
        }
        for l in alphabet.letters() {
            let mut next = elements[u].clone();
            spec.push_letter(&mut next, l);
            if !index.contains_key(&next) {
                let id = elements.len();
                index.insert(next.clone(), id);
                elements.push(next);
                depth.push(depth[u] + 1);
                queue.push_back(id);
            }
        }
    }
    let step: Vec<Vec<Option<VertexId>>> = elements
        .iter()
        .map(|e| {
            alphabet
                .letters()
                .map(|l| {
                    let mut next = e.clone();
                    spec.push_letter(&mut next, l);
                    index.get(&next).copied()
                })
                .collect()
        })
        .collect();
    let mut graph = Graph::empty();
    for e in &elements {
        graph.push_vertex(&spec.element_name(e))?;
    }
    for (u, row) in step.iter().enumerate() {
        for &v in row.iter().flatten() {
            if u < v {
                graph.push_edge(u, v)?;
            }
        }
    }
    graph.finish();
    Ok(LabeledBall {
        radius,
        graph,
        alphabet,
        elements,
        step,
        depth,
        index,
    })
}

/// Follows labelled edges from the identity.
pub fn evaluate_word(ball: &LabeledBall, w: &Word) -> Evaluation {
    let mut cur = ball.identity();
    for (i, &l) in w.letters().iter().enumerate() {
        match ball.step(cur, l) {
            Some(v) => cur = v,
            None => return Evaluation::OutOfBall { prefix: i + 1 },
        }
    }
    Evaluation::Vertex(cur)
}
