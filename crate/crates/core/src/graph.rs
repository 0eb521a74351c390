//! Simple graphs, multigraphs, vertex-weighted graphs and the structural
//! edits the hitting-time formulas are phrased in: vertex deletion,
//! contraction, completion and simple-path enumeration.
//!
//! Vertices are dense `0..n` indices everywhere.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Default limit on the vertex count for anything that enumerates simple
/// paths. Path counts grow factorially, so larger inputs are refused.
pub const DEFAULT_PATH_CAP: usize = 14;

/// Hard ceiling for the path cap; subsets are tracked as 64-bit masks.
pub const MAX_PATH_CAP: usize = 64;

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicates (in either orientation)
    /// and loops are rejected rather than merged.
    pub fn from_edge_list(edges: &[(usize, usize)], n: usize) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v, None)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize, line: Option<usize>) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { v: w, n, line });
            }
        }
        if u == v {
            return Err(Error::LoopEdge { v: u, line });
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
                line,
            }),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Parses the edge-list text format: a header line `n m` followed by
    /// `m` lines `u v`. Blank lines and `#` comments are ignored. Errors
    /// carry 1-based line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header line `n m`".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Self::empty(n);
        let mut seen = 0usize;
        for (line, body) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the {m} declared edges"),
                });
            }
            let (u, v) = parse_pair(line, body)?;
            g.insert_edge(u, v, Some(line))?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    /// Writes the edge-list text format with `u < v` on every line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sum of degrees, `2m`.
    #[inline]
    pub fn volume(&self) -> usize {
        2 * self.m
    }

    /// Sorted neighbor list.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                v,
                n: self.n(),
                line: None,
            })
        }
    }

    /// Vertices reachable from `start` without entering a blocked vertex.
    pub fn reachable_from(&self, start: usize, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        if blocked.get(start).copied().unwrap_or(false) {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] && !blocked.get(w).copied().unwrap_or(false) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.reachable_from(0, &[]).iter().all(|&b| b)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Connected components, each as a sorted vertex list, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// BFS distances from `s`; `usize::MAX` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether `uv` is an edge whose removal disconnects `u` from `v`.
    pub fn is_bridge(&self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let mut seen = vec![false; self.n()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(a) = stack.pop() {
            for &b in &self.adj[a] {
                if a == u && b == v {
                    continue;
                }
                if !seen[b] {
                    if b == v {
                        return false;
                    }
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        true
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabelled densely
    /// in increasing order. Also returns the new-to-old index map.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut m = 0;
        let adj: Vec<Vec<usize>> = old
            .iter()
            .map(|&v| {
                let nb: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_of[w])
                    .collect();
                m += nb.len();
                nb
            })
            .collect();
        (Graph { adj, m: m / 2 }, old)
    }

    /// The same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(&edges, self.n())
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        let mut mg = MultiGraph::new(self.n());
        for (u, v) in self.edges() {
            mg.add_edges(u, v, 1);
        }
        mg
    }
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = body.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, found `{body}`"),
        });
    }
    let num = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("`{s}` is not a non-negative integer"),
        })
    };
    Ok((num(parts[0])?, num(parts[1])?))
}

/// Undirected multigraph with edge multiplicities and no loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    mult: Vec<u64>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            mult: vec![0; n * n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `k` parallel `uv` edges. Loops are dropped.
    pub fn add_edges(&mut self, u: usize, v: usize, k: u64) {
        if u == v || k == 0 {
            return;
        }
        self.mult[u * self.n + v] += k;
        self.mult[v * self.n + u] += k;
    }

    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.mult[u * self.n + v]
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .map(|(u, v)| self.multiplicity(u, v))
            .sum()
    }

    /// Laplacian `D - A` with multiplicities.
    pub fn laplacian(&self) -> IntMatrix {
        let n = self.n;
        let mut lap = IntMatrix::zeros(n, n);
        for u in 0..n {
            let mut deg = 0i64;
            for v in 0..n {
                let k = self.multiplicity(u, v) as i64;
                if k != 0 {
                    lap.set(u, v, -k);
                    deg += k;
                }
            }
            lap.set(u, u, deg);
        }
        lap
    }

    /// Laplacian with row and column `skip` removed.
    pub fn reduced_laplacian(&self, skip: usize) -> IntMatrix {
        self.laplacian().minor(skip, skip)
    }
}

/// A graph with an integer weight per vertex. The weights are usually the
/// degrees in some ambient graph, which survive vertex deletions unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<i64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::InvalidParams(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.n()
            )));
        }
        Ok(Self { graph, weights })
    }

    /// `(G, d_G)`.
    pub fn with_degrees(graph: &Graph) -> Self {
        let weights = graph.degrees().into_iter().map(|d| d as i64).collect();
        Self {
            graph: graph.clone(),
            weights,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Induced subgraph on `V \ removed`, weights restricted (not
    /// recomputed). Vertices are relabelled densely in increasing order.
    pub fn delete_vertices(&self, removed: &[usize]) -> WeightedGraph {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            if v < keep.len() {
                keep[v] = false;
            }
        }
        let (graph, old) = self.graph.induced(&keep);
        let weights = old.iter().map(|&v| self.weights[v]).collect();
        WeightedGraph { graph, weights }
    }

    pub fn check_weights_cover_degrees(&self) -> Result<()> {
        for v in 0..self.n() {
            let degree = self.graph.degree(v);
            if self.weights[v] < degree as i64 {
                return Err(Error::WeightBelowDegree {
                    vertex: v,
                    weight: self.weights[v],
                    degree,
                });
            }
        }
        Ok(())
    }
}

/// Identifies the vertices of `set` into a single vertex. The surviving
/// vertices keep their relative order and the merged vertex comes last.
/// Parallel edges are kept; edges inside `set` become loops and vanish.
pub fn contract(g: &Graph, set: &[usize]) -> Result<MultiGraph> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.n();
    let mut merged = vec![false; n];
    for &v in set {
        g.check_vertex(v)?;
        merged[v] = true;
    }
    let kept = merged.iter().filter(|&&b| !b).count();
    let mut new_of = vec![kept; n];
    let mut next = 0;
    for v in 0..n {
        if !merged[v] {
            new_of[v] = next;
            next += 1;
        }
    }
    let mut mg = MultiGraph::new(kept + 1);
    for (u, v) in g.edges() {
        mg.add_edges(new_of[u], new_of[v], 1);
    }
    Ok(mg)
}

/// The completion multigraph: `wg` plus an apex vertex (index `n`) joined to
/// each `v` by `w_v - d_v` parallel edges.
pub fn completion(wg: &WeightedGraph) -> Result<MultiGraph> {
    wg.check_weights_cover_degrees()?;
    let n = wg.n();
    let mut mg = MultiGraph::new(n + 1);
    for (u, v) in wg.graph.edges() {
        mg.add_edges(u, v, 1);
    }
    for v in 0..n {
        let extra = wg.weights[v] - wg.graph.degree(v) as i64;
        mg.add_edges(v, n, extra as u64);
    }
    Ok(mg)
}

/// A simple path as its vertex sequence; `[x]` is the trivial path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplePath(pub Vec<usize>);

impl SimplePath {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        *self.0.last().expect("paths are nonempty")
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

/// Lexicographic DFS over the simple paths leaving a start vertex.
///
/// With a target, yields exactly the paths ending there; without one, yields
/// every path from the start including the trivial one.
#[derive(Debug)]
pub struct SimplePaths<'g> {
    graph: &'g Graph,
    target: Option<usize>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    cursor: Vec<usize>,
    start: usize,
    trivial_pending: bool,
}

/// Enumerates simple paths from `x`, optionally ending at `target`, that
/// avoid every vertex in `avoid`.
pub fn simple_paths<'g>(
    g: &'g Graph,
    x: usize,
    target: Option<usize>,
    avoid: &[usize],
    cap: usize,
) -> Result<SimplePaths<'g>> {
    ensure_within_cap(g.n(), cap)?;
    g.check_vertex(x)?;
    if let Some(t) = target {
        g.check_vertex(t)?;
    }
    let mut blocked = vec![false; g.n()];
    for &v in avoid {
        g.check_vertex(v)?;
        blocked[v] = true;
    }
    if blocked[x] {
        return Err(Error::InvalidParams(format!(
            "start vertex {x} is in the avoid set"
        )));
    }
    Ok(SimplePaths::with_blocked(g, x, target, blocked))
}

pub(crate) fn ensure_within_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MAX_PATH_CAP) {
        Err(Error::SizeCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

impl<'g> SimplePaths<'g> {
    /// `blocked` must have one entry per vertex and must not block `x`.
    pub(crate) fn with_blocked(
        graph: &'g Graph,
        x: usize,
        target: Option<usize>,
        mut blocked: Vec<bool>,
    ) -> Self {
        let explore = target != Some(x);
        blocked[x] = true;
        Self {
            graph,
            target,
            on_path: blocked,
            path: if explore { vec![x] } else { Vec::new() },
            cursor: if explore { vec![0] } else { Vec::new() },
            start: x,
            trivial_pending: target.is_none() || target == Some(x),
        }
    }
}

impl Iterator for SimplePaths<'_> {
    type Item = SimplePath;

    fn next(&mut self) -> Option<SimplePath> {
        if self.trivial_pending {
            self.trivial_pending = false;
            return Some(SimplePath(vec![self.start]));
        }
        loop {
            let depth = self.path.len();
            if depth == 0 {
                return None;
            }
            let top = self.path[depth - 1];
            let i = self.cursor[depth - 1];
            let nb = self.graph.neighbors(top);
            if i < nb.len() {
                self.cursor[depth - 1] += 1;
                let w = nb[i];
                if self.on_path[w] {
                    continue;
                }
                if self.target == Some(w) {
                    let mut p = self.path.clone();
                    p.push(w);
                    return Some(SimplePath(p));
                }
                self.path.push(w);
                self.cursor.push(0);
                self.on_path[w] = true;
                if self.target.is_none() {
                    return Some(SimplePath(self.path.clone()));
                }
            } else {
                self.path.pop();
                self.cursor.pop();
                self.on_path[top] = false;
            }
        }
    }
}

/// Neighbor sets as bitmasks. Requires `n <= 64`.
pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u64> {
    debug_assert!(g.n() <= MAX_PATH_CAP);
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | (1 << w)))
        .collect()
}

/// Mask-based twin of [`SimplePaths`]: calls `f(path_mask, end)` for each
/// simple path from `start` that stays inside `allowed`, in the same
/// lexicographic order. `start` must be in `allowed`.
pub(crate) fn visit_path_masks(
    adj: &[u64],
    start: usize,
    target: Option<usize>,
    allowed: u64,
    f: &mut impl FnMut(u64, usize),
) {
    fn walk(
        adj: &[u64],
        v: usize,
        target: Option<usize>,
        allowed: u64,
        path: u64,
        f: &mut impl FnMut(u64, usize),
    ) {
        let mut next = adj[v] & allowed & !path;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            let grown = path | (1 << w);
            match target {
                Some(t) if t == w => f(grown, w),
                Some(_) => walk(adj, w, target, allowed, grown, f),
                None => {
                    f(grown, w);
                    walk(adj, w, target, allowed, grown, f);
                }
            }
        }
    }

    let bit = 1u64 << start;
    debug_assert!(allowed & bit != 0);
    match target {
        Some(t) if t == start => f(bit, start),
        Some(_) => walk(adj, start, target, allowed, bit, f),
        None => {
            f(bit, start);
            walk(adj, start, target, allowed, bit, f);
        }
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn mask_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(usize, usize)], n: usize) -> Graph {
        Graph::from_edge_list(edges, n).unwrap()
    }

    fn p4() -> Graph {
        g(&[(0, 1), (1, 2), (2, 3)], 4)
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("3 2\n0 1\n0 1", Error::DuplicateEdge { u: 0, v: 1, line: Some(3) }),
            ("3 2\n0 1\n# note\n2 2", Error::LoopEdge { v: 2, line: Some(4) }),
            ("3 1\n0 5", Error::VertexOutOfRange { v: 5, n: 3, line: Some(2) }),
        ];
        for (text, want) in cases {
            assert_eq!(Graph::parse_edge_list(text).unwrap_err(), want, "{text:?}");
        }
        for bad in ["", "3", "3 2\n0 1", "2 1\n0 x", "2 1\n0 1 2", "2 1\n0 1\n1 0"] {
            assert!(Graph::parse_edge_list(bad).is_err(), "{bad:?}");
        }
        let tri = Graph::parse_edge_list("# triangle\n3 3\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(tri, g(&[(0, 1), (1, 2), (0, 2)], 3));
    }

    #[test]
    fn basic_queries() {
        let s = g(&[(0, 1), (0, 2), (0, 3)], 4);
        assert_eq!(s.degrees(), [3, 1, 1, 1]);
        assert_eq!((s.volume(), s.max_degree()), (6, 3));
        assert_eq!(s.distances_from(1), [1, 0, 2, 2]);
        assert!(s.is_bridge(0, 2));
        let c4 = g(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4);
        assert!(!c4.is_bridge(0, 1));
        let split = g(&[(0, 1), (2, 3)], 5);
        assert!(!split.is_connected());
        assert_eq!(split.components(), [vec![0, 1], vec![2, 3], vec![4]]);
        assert_eq!(split.ensure_connected(), Err(Error::Disconnected));
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn induced_and_relabel() {
        let (sub, map) = p4().induced(&[true, false, true, true]);
        assert_eq!(map, [0, 2, 3]);
        assert_eq!(sub, g(&[(1, 2)], 3));
        let r = p4().relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(r, p4());
        assert!(p4().relabel(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn contraction_keeps_parallel_edges() {
        // merging the ends of P_4 turns it into a triangle with a double edge
        let mg = contract(&p4(), &[0, 3]).unwrap();
        assert_eq!(mg.n(), 3);
        assert_eq!(mg.multiplicity(0, 2), 1);
        assert_eq!(mg.multiplicity(1, 2), 1);
        assert_eq!(mg.multiplicity(0, 1), 1);
        let mg = contract(&g(&[(0, 1), (1, 2), (0, 2)], 3), &[0, 1]).unwrap();
        assert_eq!((mg.n(), mg.multiplicity(0, 1), mg.edge_count()), (2, 2, 2));
        assert_eq!(contract(&p4(), &[]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn completion_adds_apex_edges() {
        let wg = WeightedGraph::new(p4(), vec![1, 4, 2, 3]).unwrap();
        let c = completion(&wg).unwrap();
        assert_eq!(c.n(), 5);
        assert_eq!([0, 1, 2, 3].map(|v| c.multiplicity(v, 4)), [0, 2, 0, 2]);
        let low = WeightedGraph::new(p4(), vec![1, 1, 2, 1]).unwrap();
        assert!(matches!(completion(&low), Err(Error::WeightBelowDegree { vertex: 1, .. })));
        assert!(WeightedGraph::new(p4(), vec![1, 2]).is_err());
    }

    #[test]
    fn delete_vertices_relabels_densely() {
        let wg = WeightedGraph::new(p4(), vec![5, 6, 7, 8]).unwrap();
        let d = wg.delete_vertices(&[1]);
        assert_eq!(d.weights, [5, 7, 8]);
        assert_eq!(d.graph, g(&[(1, 2)], 3));
    }

    #[test]
    fn simple_path_enumeration() {
        let k4 = g(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        let to3: Vec<Vec<usize>> = simple_paths(&k4, 0, Some(3), &[], 14)
            .unwrap()
            .map(|p| p.0)
            .collect();
        assert_eq!(
            to3,
            [vec![0, 1, 2, 3], vec![0, 1, 3], vec![0, 2, 1, 3], vec![0, 2, 3], vec![0, 3]]
        );
        let trivial: Vec<_> = simple_paths(&k4, 2, Some(2), &[], 14).unwrap().collect();
        assert_eq!(trivial, [SimplePath(vec![2])]);
        let avoiding: Vec<_> = simple_paths(&p4(), 0, None, &[2], 14).unwrap().map(|p| p.0).collect();
        assert_eq!(avoiding, [vec![0], vec![0, 1]]);
        assert!(simple_paths(&p4(), 0, None, &[0], 14).is_err());
        assert_eq!(
            simple_paths(&p4(), 0, None, &[], 3).unwrap_err(),
            Error::SizeCapExceeded { n: 4, cap: 3 }
        );
    }

    #[test]
    fn mask_visitor_matches_iterator() {
        let graphs = [
            p4(),
            g(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)], 5),
            g(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 5)], 6),
        ];
        for gr in &graphs {
            let adj = adjacency_masks(gr);
            let n = gr.n();
            for x in 0..n {
                for blocked in 0..n {
                    let avoid: Vec<usize> = if blocked == x { vec![] } else { vec![blocked] };
                    let allowed = avoid.iter().fold(full_mask(n), |m, &v| m & !(1 << v));
                    for target in std::iter::once(None).chain((0..n).map(Some)) {
                        let expect: Vec<(u64, usize)> = simple_paths(gr, x, target, &avoid, 14)
                            .unwrap()
                            .map(|p| (p.0.iter().fold(0, |m, &v| m | 1 << v), p.end()))
                            .collect();
                        let mut got = Vec::new();
                        visit_path_masks(&adj, x, target, allowed, &mut |m, e| got.push((m, e)));
                        assert_eq!(got, expect, "x={x} target={target:?} avoid={avoid:?}");
                    }
                }
            }
        }
        assert_eq!(mask_bits(0b10110).collect::<Vec<_>>(), [1, 2, 4]);
        assert_eq!(full_mask(64), u64::MAX);
    }

    #[test]
    fn laplacian_of_multigraph() {
        let mut mg = MultiGraph::new(3);
        mg.add_edges(0, 1, 2);
        mg.add_edges(1, 2, 1);
        mg.add_edges(2, 2, 5);
        let l = mg.laplacian();
        let want = [[2, -2, 0], [-2, 3, -1], [0, -1, 1]];
        for (i, row) in want.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(l.get(i, j), &num_bigint::BigInt::from(v));
            }
        }
        assert_eq!(mg.reduced_laplacian(0).rows(), 2);
    }
}
