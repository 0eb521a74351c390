//! Named graph families.
//!
//! Labelling conventions:
//! - `path`, `cycle`: vertices in order along the path/cycle.
//! - `star`: vertex 0 is the center.
//! - `lollipop:m,n`: clique vertices `x_1..x_m` are `0..m`, path vertices
//!   `y_1..y_n` are `m..m+n`; `x_m` is joined to `y_1`.
//! - random families are driven by ChaCha8 seeded with the given seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge probability used by `random_connected` when none is given.
pub const DEFAULT_CHORD_PROBABILITY: f64 = 0.3;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// `n` vertices in total.
    Star { n: usize },
    Lollipop { m: usize, n: usize },
    /// Uniform labelled tree (Prüfer decoding).
    RandomTree { n: usize, seed: u64 },
    /// Uniform tree plus each remaining pair independently with probability `p`.
    RandomConnected { n: usize, p: f64, seed: u64 },
    /// Uniform tree plus one uniformly chosen non-edge.
    RandomUnicyclic { n: usize, seed: u64 },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

/// Builds the graph for a family. Random families are deterministic in
/// their seed.
pub fn generate_family(family: &Family) -> Result<Graph> {
    match *family {
        Family::Path { n } => {
            need(n >= 1, "path needs n >= 1")?;
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::from_edge_list(&edges, n)
        }
        Family::Cycle { n } => {
            need(n >= 3, "cycle needs n >= 3")?;
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::from_edge_list(&edges, n)
        }
        Family::Complete { n } => {
            need(n >= 1, "complete needs n >= 1")?;
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            Graph::from_edge_list(&edges, n)
        }
        Family::Star { n } => {
            need(n >= 1, "star needs n >= 1")?;
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edge_list(&edges, n)
        }
        Family::Lollipop { m, n } => {
            need(m >= 1 && n >= 1, "lollipop needs m >= 1 and n >= 1")?;
            let mut edges: Vec<_> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
            edges.extend((m..m + n).map(|v| (v - 1, v)));
            Graph::from_edge_list(&edges, m + n)
        }
        Family::RandomTree { n, seed } => {
            need(n >= 1, "random_tree needs n >= 1")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Graph::from_edge_list(&random_tree_edges(n, &mut rng), n)
        }
        Family::RandomConnected { n, p, seed } => {
            need(n >= 1, "random_connected needs n >= 1")?;
            need((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::from_edge_list(&random_tree_edges(n, &mut rng), n)?;
            let mut edges = g.edges();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            g = Graph::from_edge_list(&edges, n)?;
            Ok(g)
        }
        Family::RandomUnicyclic { n, seed } => {
            need(n >= 3, "random_unicyclic needs n >= 3")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = random_tree_edges(n, &mut rng);
            let tree = Graph::from_edge_list(&edges, n)?;
            let non_edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !tree.has_edge(u, v))
                .collect();
            edges.push(*non_edges.choose(&mut rng).expect("a tree on n >= 3 vertices is not complete"));
            Graph::from_edge_list(&edges, n)
        }
    }
}

fn need(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(invalid(msg))
    }
}

/// Edges of a uniformly random labelled tree on `n` vertices.
fn random_tree_edges(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

impl Family {
    /// Human-readable vertex names.
    pub fn labels(&self) -> Vec<String> {
        match *self {
            Family::Lollipop { m, n } => (1..=m)
                .map(|i| format!("x_{i}"))
                .chain((1..=n).map(|j| format!("y_{j}")))
                .collect(),
            _ => (0..self.vertex_count()).map(|v| format!("v{v}")).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path { n }
            | Family::Cycle { n }
            | Family::Complete { n }
            | Family::Star { n }
            | Family::RandomTree { n, .. }
            | Family::RandomConnected { n, .. }
            | Family::RandomUnicyclic { n, .. } => n,
            Family::Lollipop { m, n } => m + n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Star { n } => write!(f, "star:{n}"),
            Family::Lollipop { m, n } => write!(f, "lollipop:{m},{n}"),
            Family::RandomTree { n, seed } => write!(f, "random_tree:n={n},seed={seed}"),
            Family::RandomConnected { n, p, seed } => {
                write!(f, "random:n={n},p={p},seed={seed}")
            }
            Family::RandomUnicyclic { n, seed } => write!(f, "random_unicyclic:n={n},seed={seed}"),
        }
    }
}

/// Parses specs such as `path:5`, `lollipop:5,5`, `random:n=8,seed=42`,
/// `random:n=8,p=0.5,seed=1`, `random_tree:n=10,seed=3`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = args
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .collect();
        let keyed = |key: &str| -> Option<&str> {
            args.iter()
                .find_map(|a| a.split_once('=').filter(|(k, _)| k.trim() == key).map(|(_, v)| v.trim()))
        };
        let int = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|_| invalid(format!("`{v}` is not a non-negative integer in `{s}`")))
        };
        let positional = |i: usize| -> Result<usize> {
            let v = args
                .get(i)
                .ok_or_else(|| invalid(format!("`{s}` is missing parameter {}", i + 1)))?;
            int(v.split_once('=').map_or(v, |(_, v)| v))
        };
        let size = || -> Result<usize> { keyed("n").map_or_else(|| positional(0), int) };
        let seed = || -> Result<u64> {
            keyed("seed")
                .ok_or_else(|| invalid(format!("random family `{s}` requires seed=")))?
                .parse()
                .map_err(|_| invalid(format!("bad seed in `{s}`")))
        };
        let fam = match name.trim() {
            "path" => Family::Path { n: size()? },
            "cycle" => Family::Cycle { n: size()? },
            "complete" => Family::Complete { n: size()? },
            "star" => Family::Star { n: size()? },
            "lollipop" => Family::Lollipop {
                m: keyed("m").map_or_else(|| positional(0), int)?,
                n: keyed("n").map_or_else(|| positional(1), int)?,
            },
            "random_tree" => Family::RandomTree {
                n: size()?,
                seed: seed()?,
            },
            "random" | "random_connected" => Family::RandomConnected {
                n: size()?,
                p: keyed("p")
                    .map(|v| v.parse::<f64>().map_err(|_| invalid(format!("bad p in `{s}`"))))
                    .transpose()?
                    .unwrap_or(DEFAULT_CHORD_PROBABILITY),
                seed: seed()?,
            },
            "random_unicyclic" => Family::RandomUnicyclic {
                n: size()?,
                seed: seed()?,
            },
            other => return Err(invalid(format!("unknown family `{other}`"))),
        };
        Ok(fam)
    }
}
