//! Checks built on top of the hitting-time methods: upper bounds, the
//! bridge identity, the reversibility criterion, and closed forms for
//! lollipops, trees and unicyclic graphs.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::HittingEngine;
use crate::invariants::{Invariants, ZMethod};
use crate::linalg::ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    /// `(n-1)^3`
    Cubic,
    /// `k (n-1)^2` with `k` the maximum degree
    MaxDegree,
    /// `2m - d_y`, when `xy` is an edge
    Edge,
    /// `max { d_u : u in S }`, when `d_y = n - 1`
    Dominating,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Cubic => "cubic",
            Self::MaxDegree => "max_degree",
            Self::Edge => "edge",
            Self::Dominating => "dominating",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub kind: BoundKind,
    pub bound: BigInt,
    /// `bound - H`
    pub slack: BigRational,
}

impl BoundCheck {
    pub fn satisfied(&self) -> bool {
        !self.slack.is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub x: usize,
    pub y: usize,
    pub hitting_time: BigRational,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(BoundCheck::satisfied)
    }

    pub fn check(&self, kind: BoundKind) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

/// Vertices reachable from `x` by a path avoiding `y`, including `x`.
pub fn reach_avoiding(g: &Graph, x: usize, y: usize) -> Vec<usize> {
    if x == y {
        return vec![x];
    }
    let mut blocked = vec![false; g.n()];
    blocked[y] = true;
    let seen = g.reachable_from(x, &blocked);
    (0..g.n()).filter(|&v| seen[v]).collect()
}

/// Evaluates `H(x, y)` with the oracle and checks every applicable bound.
pub fn verify_bounds(g: &Graph, x: usize, y: usize) -> Result<BoundReport> {
    let mut engine = HittingEngine::new(g, 0)?;
    verify_bounds_with(&mut engine, x, y)
}

/// [`verify_bounds`] reusing an engine's cached oracle solutions.
pub fn verify_bounds_with(engine: &mut HittingEngine<'_>, x: usize, y: usize) -> Result<BoundReport> {
    let g = engine.graph().clone();
    let h = engine.exact(x, y, crate::hitting::ExactMethod::Oracle)?;
    let n1 = BigInt::from(g.n() - 1);
    let mut checks = vec![
        (BoundKind::Cubic, &n1 * &n1 * &n1),
        (BoundKind::MaxDegree, BigInt::from(g.max_degree()) * &n1 * &n1),
    ];
    if g.has_edge(x, y) {
        checks.push((BoundKind::Edge, BigInt::from(2 * g.m() - g.degree(y))));
    }
    if g.degree(y) == g.n() - 1 {
        let max = reach_avoiding(&g, x, y)
            .into_iter()
            .map(|u| g.degree(u))
            .max()
            .unwrap_or(0);
        checks.push((BoundKind::Dominating, BigInt::from(max)));
    }
    let checks = checks
        .into_iter()
        .map(|(kind, bound)| BoundCheck {
            kind,
            slack: BigRational::from_integer(bound.clone()) - &h,
            bound,
        })
        .collect();
    Ok(BoundReport {
        x,
        y,
        hitting_time: h,
        checks,
    })
}

/// `H(x, y) = 2|E(G')| - 1` for a bridge `xy`, where `G'` is induced on the
/// vertices reachable from `x` without `y`, plus `y`.
pub fn hit_cut_edge(g: &Graph, x: usize, y: usize) -> Result<BigRational> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if !g.is_bridge(x, y) {
        return Err(Error::NotBridge(x, y));
    }
    let mut keep = vec![false; g.n()];
    for v in reach_avoiding(g, x, y) {
        keep[v] = true;
    }
    keep[y] = true;
    let (sub, _) = g.induced(&keep);
    Ok(ratio(2 * sub.m() - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    /// `Z(G - {x}, d_G)` for each vertex `x`.
    pub z_deleted: Vec<BigInt>,
    /// Verdict of the `Z` criterion: all entries of `z_deleted` equal.
    pub is_reversible: bool,
    /// Verdict of comparing `H(x, y)` with `H(y, x)` directly.
    pub direct_symmetric: bool,
    /// First pair `(x, y)`, `x < y`, with `H(x, y) != H(y, x)`, and both values.
    pub witness: Option<(usize, usize, BigRational, BigRational)>,
}

impl ReversibilityReport {
    pub fn criteria_agree(&self) -> bool {
        self.is_reversible == self.direct_symmetric
    }
}

/// Decides reversibility with the `Z(G - {x}, d_G)` criterion and
/// cross-checks it against all-pairs hitting times.
pub fn reversibility_report(g: &Graph, cap: usize) -> Result<ReversibilityReport> {
    let mut engine = HittingEngine::new(g, cap)?;
    let mut inv = Invariants::with_degrees(g, cap)?;
    let all = inv.all();
    let z_deleted: Vec<BigInt> = (0..g.n())
        .map(|x| inv.z(all & !(1 << x), ZMethod::Recursive))
        .collect();
    let is_reversible = z_deleted.windows(2).all(|w| w[0] == w[1]);

    let mut witness = None;
    'outer: for x in 0..g.n() {
        for y in x + 1..g.n() {
            let hxy = engine.exact(x, y, crate::hitting::ExactMethod::Oracle)?;
            let hyx = engine.exact(y, x, crate::hitting::ExactMethod::Oracle)?;
            if hxy != hyx {
                witness = Some((x, y, hxy, hyx));
                break 'outer;
            }
        }
    }
    Ok(ReversibilityReport {
        z_deleted,
        is_reversible,
        direct_symmetric: witness.is_none(),
        witness,
    })
}

/// Vertex sequence of a shortest `a`-`b` path.
fn shortest_path(g: &Graph, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if parent[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

/// For each vertex, the number of edges in its component of `g` minus
/// `removed` edges.
fn hanging_edge_counts(g: &Graph, removed: &[(usize, usize)]) -> Vec<usize> {
    let is_removed = |u: usize, v: usize| {
        removed
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    };
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut edge_count = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = edge_count.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut degree_sum = 0;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if is_removed(v, w) {
                    continue;
                }
                degree_sum += 1;
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        edge_count.push(degree_sum / 2);
    }
    comp.into_iter().map(|c| edge_count[c]).collect()
}

/// `d(a,b)^2 + 2 sum_{v on P} m_v d(v,b)` for a path `P` of bridges.
fn bridge_path_formula(g: &Graph, path: &[usize]) -> BigInt {
    let edges: Vec<_> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let hanging = hanging_edge_counts(g, &edges);
    let len = path.len() - 1;
    let mut total = BigInt::from(len * len);
    for (i, &v) in path.iter().enumerate() {
        total += BigInt::from(2 * hanging[v] * (len - i));
    }
    total
}

/// Closed-form hitting time on a tree.
pub fn hit_tree_closed(g: &Graph, a: usize, b: usize) -> Result<BigInt> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !g.is_connected() || g.m() + 1 != g.n() {
        return Err(Error::NotATree);
    }
    let path = shortest_path(g, a, b).expect("trees are connected");
    Ok(bridge_path_formula(g, &path))
}

/// `H(x_1, y_N)` on the lollipop `L_{N,N}`: `N^3 + N - 1`.
pub fn hit_lollipop_closed(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidParams("lollipop closed form needs N >= 2".into()));
    }
    let n = BigInt::from(n);
    Ok(&n * &n * &n + &n - 1)
}

/// Structure of a connected graph with exactly one cycle.
#[derive(Debug, Clone)]
pub struct UnicycleDescriptor {
    graph: Graph,
    /// Cycle vertices in cyclic order.
    pub cycle: Vec<usize>,
    /// Position of each vertex on the cycle, if it lies on it.
    pub cycle_position: Vec<Option<usize>>,
    /// The cycle vertex whose hanging tree contains each vertex.
    pub root: Vec<usize>,
    /// `|E(T_i)|` per cycle position.
    pub tree_edges: Vec<usize>,
    /// Distance from each vertex to its root inside its tree.
    pub depth: Vec<usize>,
    parent: Vec<usize>,
}

impl UnicycleDescriptor {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n < 3 || g.m() != n || !g.is_connected() {
            return Err(Error::NotUnicyclic);
        }
        // peel leaves until only the cycle remains
        let mut degree = g.degrees();
        let mut on_cycle = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        while let Some(v) = queue.pop_front() {
            on_cycle[v] = false;
            for &w in g.neighbors(v) {
                if on_cycle[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
        let start = (0..n).find(|&v| on_cycle[v]).ok_or(Error::NotUnicyclic)?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| on_cycle[w] && w != prev)
                .ok_or(Error::NotUnicyclic)?;
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        let mut cycle_position = vec![None; n];
        for (i, &c) in cycle.iter().enumerate() {
            cycle_position[c] = Some(i);
        }

        let mut root = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut parent = vec![usize::MAX; n];
        let mut tree_edges = vec![0; cycle.len()];
        for (pos, &c) in cycle.iter().enumerate() {
            root[c] = c;
            parent[c] = c;
            let mut queue = VecDeque::from([c]);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if on_cycle[w] || root[w] != usize::MAX {
                        continue;
                    }
                    root[w] = c;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    tree_edges[pos] += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(Self {
            graph: g.clone(),
            cycle,
            cycle_position,
            root,
            tree_edges,
            depth,
            parent,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    /// Path from `v` up to its root, inclusive.
    fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while self.parent[cur] != cur {
            cur = self.parent[cur];
            path.push(cur);
        }
        path
    }

    fn pos(&self, c: usize) -> usize {
        self.cycle_position[c].expect("cycle vertex")
    }
}

/// Closed-form hitting time on a unicyclic graph.
pub fn hit_unicycle_closed(u: &UnicycleDescriptor, a: usize, b: usize) -> Result<BigRational> {
    u.graph.check_vertex(a)?;
    u.graph.check_vertex(b)?;
    hit_unicycle_closed_in(u, a, u.root[a], b, u.root[b])
}

/// As [`hit_unicycle_closed`], with the caller naming the cycle vertices
/// `i`, `j` whose trees are claimed to contain `a`, `b`.
pub fn hit_unicycle_closed_in(
    u: &UnicycleDescriptor,
    a: usize,
    i: usize,
    b: usize,
    j: usize,
) -> Result<BigRational> {
    let g = &u.graph;
    for (v, claimed) in [(a, i), (b, j)] {
        g.check_vertex(v)?;
        if u.root[v] != claimed {
            return Err(Error::VertexNotInClaimedTrees {
                vertex: v,
                root: claimed,
            });
        }
    }
    if a == b {
        return Ok(BigRational::zero());
    }
    if i == j {
        let path = shortest_path(g, a, b).expect("connected");
        return Ok(BigRational::from_integer(bridge_path_formula(g, &path)));
    }

    let l = u.cycle_len();
    let p_ai = u.path_to_root(a);
    let mut p_jb = u.path_to_root(b);
    p_jb.reverse();

    let mut g0_edges: Vec<(usize, usize)> = Vec::new();
    g0_edges.extend(p_ai.windows(2).map(|w| (w[0], w[1])));
    g0_edges.extend(p_jb.windows(2).map(|w| (w[0], w[1])));
    g0_edges.extend((0..l).map(|k| (u.cycle[k], u.cycle[(k + 1) % l])));
    let hanging = hanging_edge_counts(g, &g0_edges);

    let (pi, pj) = (u.pos(i), u.pos(j));
    let dij = (pj + l - pi) % l;
    let lq = ratio(l);
    let ring = ratio(dij * (l - dij)) / &lq;
    let dai = u.depth[a];
    let djb = u.depth[b];

    let mut total = BigRational::zero();
    for &v in &p_ai {
        let d_vi = ratio(u.depth[v]);
        total += ratio(2 * hanging[v]) * (d_vi + ratio(djb) + &ring);
    }
    for &v in &p_jb {
        total += ratio(2 * hanging[v] * (u.depth[b] - u.depth[v]));
    }
    for (pk, &k) in u.cycle.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        // arcs along the i -> j -> k path
        let fwd_j = (pj + l - pi) % l;
        let fwd_k = (pk + l - pi) % l;
        let (m_ij, m_jk) = if fwd_j < fwd_k {
            (fwd_j, (pk + l - pj) % l)
        } else {
            ((pi + l - pj) % l, (pj + l - pk) % l)
        };
        let term = ratio(djb) + ratio(m_ij * m_jk) / &lq;
        total += ratio(2 * hanging[k]) * term;
    }
    total += ratio(dai * dai + djb * djb + 2 * (l + dai) * djb);
    total += ratio(l + 2 * dai) / &lq * ratio(dij * (l - dij));
    Ok(total)
}
