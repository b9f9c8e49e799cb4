//! Deterministic graph families used as test corpora.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Petersen,
    /// Complete `branching`-ary tree of the given depth.
    Tree { branching: usize, depth: usize },
    /// Base path `p0..pm`; a cycle of length `2n + 3` is glued at `pn`.
    Psi(usize),
    Hypercube(usize),
}

impl Family {
    /// Parses a family name with its numeric parameters, e.g. `("tree", [2, 3])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "family {name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let f = match name {
            "complete" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "cycle" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "petersen" => {
                want(0)?;
                Family::Petersen
            }
            "tree" => {
                want(2)?;
                Family::Tree {
                    branching: params[0],
                    depth: params[1],
                }
            }
            "psi" => {
                want(1)?;
                Family::Psi(params[0])
            }
            "hypercube" => {
                want(1)?;
                Family::Hypercube(params[0])
            }
            other => {
                return Err(Error::InvalidParameter(format!("unknown family {other:?}")))
            }
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        match *self {
            Family::Complete(0) => bad("complete(n) needs n >= 1"),
            Family::Cycle(n) if n < 3 => bad("cycle(n) needs n >= 3"),
            Family::Tree { branching: 0, .. } => bad("tree needs branching >= 1"),
            Family::Hypercube(0) => bad("hypercube(d) needs d >= 1"),
            Family::Hypercube(d) if d > 16 => bad("hypercube(d) is limited to d <= 16"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Petersen => write!(f, "petersen"),
            Family::Tree { branching, depth } => write!(f, "tree({branching},{depth})"),
            Family::Psi(m) => write!(f, "psi({m})"),
            Family::Hypercube(d) => write!(f, "hypercube({d})"),
        }
    }
}

fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<(&str, &str)> = edges
        .iter()
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    Graph::new(&names, &edges)
}

pub fn gen_family(family: &Family) -> Result<Graph> {
    family.validate()?;
    match *family {
        Family::Complete(n) => {
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            numbered(n, &edges)
        }
        Family::Cycle(n) => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            numbered(n, &edges)
        }
        Family::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            numbered(10, &edges)
        }
        Family::Tree { branching, depth } => {
            let mut edges = Vec::new();
            let mut layer = vec![0usize];
            let mut next_id = 1;
            for _ in 0..depth {
                let mut next = Vec::new();
                for &p in &layer {
                    for _ in 0..branching {
                        edges.push((p, next_id));
                        next.push(next_id);
                        next_id += 1;
                    }
                }
                layer = next;
            }
            numbered(next_id, &edges)
        }
        Family::Psi(m) => {
            let mut names: Vec<String> = (0..=m).map(|i| format!("p{i}")).collect();
            let mut edges: Vec<(String, String)> = (0..m)
                .map(|i| (format!("p{i}"), format!("p{}", i + 1)))
                .collect();
            for n in 0..=m {
                let fresh: Vec<String> = (1..=2 * n + 2).map(|j| format!("c{n}_{j}")).collect();
                let mut ring = vec![format!("p{n}")];
                ring.extend(fresh.iter().cloned());
                for k in 0..ring.len() {
                    edges.push((ring[k].clone(), ring[(k + 1) % ring.len()].clone()));
                }
                names.extend(fresh);
            }
            Graph::new(&names, &edges)
        }
        Family::Hypercube(d) => {
            let n = 1usize << d;
            let names: Vec<String> = (0..n).map(|i| format!("{i:0d$b}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for b in 0..d {
                    let j = i ^ (1 << b);
                    if i < j {
                        edges.push((names[i].as_str(), names[j].as_str()));
                    }
                }
            }
            Graph::new(&names, &edges)
        }
    }
}
