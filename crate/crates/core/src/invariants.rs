//! The vertex-weighted invariants `R(G, w)` and `Z(G, w)`.
//!
//! `R` has two routes: the defining recursion over simple paths, and the
//! spanning-tree count of the completion multigraph. `Z` likewise has the
//! recursion and a direct sum over all simple paths. Every route memoizes by
//! the set of surviving vertices, since the weights are fixed by the
//! ambient graph and only ever get restricted.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{
    adjacency_masks, completion, ensure_within_cap, full_mask, mask_bits, visit_path_masks, Graph,
    WeightedGraph,
};
use crate::linalg::tau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantMethod {
    Recursive,
    Pathsum,
    Completion,
    Closed,
}

impl InvariantMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Recursive => "recursive",
            Self::Pathsum => "pathsum",
            Self::Completion => "completion",
            Self::Closed => "closed",
        }
    }
}

/// An invariant value tagged with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: BigInt,
    pub method: InvariantMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RMethod {
    Recursive,
    Completion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMethod {
    Recursive,
    Pathsum,
}

/// Memoizing evaluator for `R` and `Z` on induced subgraphs of one weighted
/// graph. Subgraphs are named by the bitmask of their vertices.
pub struct Invariants {
    adj: Vec<u64>,
    weights: Vec<BigInt>,
    wg: WeightedGraph,
    completion_ok: bool,
    r_rec: HashMap<u64, BigInt>,
    r_comp: HashMap<u64, BigInt>,
    z_rec: HashMap<u64, BigInt>,
    z_sum: HashMap<u64, BigInt>,
}

impl Invariants {
    pub fn new(wg: &WeightedGraph, cap: usize) -> Result<Self> {
        ensure_within_cap(wg.n(), cap)?;
        Ok(Self {
            adj: adjacency_masks(&wg.graph),
            weights: wg.weights.iter().map(|&w| BigInt::from(w)).collect(),
            completion_ok: wg.check_weights_cover_degrees().is_ok(),
            wg: wg.clone(),
            r_rec: HashMap::new(),
            r_comp: HashMap::new(),
            z_rec: HashMap::new(),
            z_sum: HashMap::new(),
        })
    }

    /// `(G, d_G)`.
    pub fn with_degrees(g: &Graph, cap: usize) -> Result<Self> {
        Self::new(&WeightedGraph::with_degrees(g), cap)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Mask of all vertices.
    pub fn all(&self) -> u64 {
        full_mask(self.n())
    }

    pub fn weight(&self, v: usize) -> &BigInt {
        &self.weights[v]
    }

    /// `R` of the subgraph induced by `mask`.
    pub fn r(&mut self, mask: u64, method: RMethod) -> Result<BigInt> {
        match method {
            RMethod::Recursive => Ok(self.r_recursive(mask)),
            RMethod::Completion => self.r_completion(mask),
        }
    }

    /// `R` by the completion route when every weight covers its degree,
    /// otherwise by recursion.
    pub fn r_default(&mut self, mask: u64) -> BigInt {
        if self.completion_ok {
            self.r_completion(mask)
                .expect("weights were checked against degrees")
        } else {
            self.r_recursive(mask)
        }
    }

    /// `Z` of the subgraph induced by `mask`.
    pub fn z(&mut self, mask: u64, method: ZMethod) -> BigInt {
        match method {
            ZMethod::Recursive => self.z_recursive(mask),
            ZMethod::Pathsum => self.z_pathsum(mask),
        }
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub(crate) fn paths_to(&self, x: usize, y: usize, allowed: u64) -> Vec<u64> {
        let mut out = Vec::new();
        visit_path_masks(&self.adj, x, Some(y), allowed, &mut |p, _| out.push(p));
        out
    }

    pub(crate) fn paths_from(&self, x: usize, allowed: u64) -> Vec<(u64, usize)> {
        let mut out = Vec::new();
        visit_path_masks(&self.adj, x, None, allowed, &mut |p, end| out.push((p, end)));
        out
    }

    fn r_recursive(&mut self, mask: u64) -> BigInt {
        if mask == 0 {
            return BigInt::one();
        }
        if let Some(v) = self.r_rec.get(&mask) {
            return v.clone();
        }
        let comps = self.components(mask);
        let value = if comps.len() > 1 {
            comps.into_iter().map(|c| self.r_recursive(c)).product()
        } else {
            let pivot = mask.trailing_zeros() as usize;
            self.r_expand(mask, pivot)
        };
        self.r_rec.insert(mask, value.clone());
        value
    }

    /// One step of the `R` recursion at `pivot`.
    fn r_expand(&mut self, mask: u64, pivot: usize) -> BigInt {
        let bit = 1u64 << pivot;
        let rest = self.r_recursive(mask & !bit);
        let mut value = &self.weights[pivot] * rest;
        for y in mask_bits(self.adj[pivot] & mask) {
            for p in self.paths_to(pivot, y, mask) {
                value -= self.r_recursive(mask & !p);
            }
        }
        value
    }

    /// `R` by applying the recursion at an arbitrary top-level pivot.
    pub fn r_with_pivot(&mut self, mask: u64, pivot: usize) -> BigInt {
        assert!(mask & (1 << pivot) != 0, "pivot must lie in the subgraph");
        self.r_expand(mask, pivot)
    }

    fn r_completion(&mut self, mask: u64) -> Result<BigInt> {
        if mask == 0 {
            return Ok(BigInt::one());
        }
        if let Some(v) = self.r_comp.get(&mask) {
            return Ok(v.clone());
        }
        let removed: Vec<usize> = mask_bits(full_mask(self.n()) & !mask).collect();
        let sub = self.wg.delete_vertices(&removed);
        let value = tau(&completion(&sub)?)?;
        self.r_comp.insert(mask, value.clone());
        Ok(value)
    }

    fn z_recursive(&mut self, mask: u64) -> BigInt {
        if mask == 0 {
            return BigInt::zero();
        }
        if let Some(v) = self.z_rec.get(&mask) {
            return v.clone();
        }
        let comps = self.components(mask);
        let value = if comps.len() > 1 {
            let rs: Vec<BigInt> = comps.iter().map(|&c| self.r_recursive(c)).collect();
            let mut total = BigInt::zero();
            for (i, &c) in comps.iter().enumerate() {
                let others: BigInt = rs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| r)
                    .product();
                total += self.z_recursive(c) * others;
            }
            total
        } else {
            let pivot = mask.trailing_zeros() as usize;
            self.z_expand(mask, pivot)
        };
        self.z_rec.insert(mask, value.clone());
        value
    }

    /// One step of the `Z` recursion at `pivot`.
    fn z_expand(&mut self, mask: u64, pivot: usize) -> BigInt {
        let bit = 1u64 << pivot;
        let rest = mask & !bit;
        let wx = self.weights[pivot].clone();
        let mut value = &wx * self.z_recursive(rest) + &wx * &wx * self.r_recursive(rest);
        for y in mask_bits(self.adj[pivot] & mask) {
            for p in self.paths_to(pivot, y, mask) {
                value -= self.z_recursive(mask & !p);
            }
        }
        // ordered pairs of paths from the pivot meeting only at the pivot
        for (p1, u) in self.paths_from(pivot, mask) {
            let allowed = mask & !(p1 & !bit);
            for (p2, v) in self.paths_from(pivot, allowed) {
                if u == v {
                    continue;
                }
                let r = self.r_recursive(mask & !(p1 | p2));
                value += &self.weights[u] * &self.weights[v] * r;
            }
        }
        value
    }

    /// `Z` by applying the recursion at an arbitrary top-level pivot.
    pub fn z_with_pivot(&mut self, mask: u64, pivot: usize) -> BigInt {
        assert!(mask & (1 << pivot) != 0, "pivot must lie in the subgraph");
        self.z_expand(mask, pivot)
    }

    fn z_pathsum(&mut self, mask: u64) -> BigInt {
        if mask == 0 {
            return BigInt::zero();
        }
        if let Some(v) = self.z_sum.get(&mask) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for x in mask_bits(mask) {
            for (p, y) in self.paths_from(x, mask) {
                let r = self.r_default(mask & !p);
                total += &self.weights[x] * &self.weights[y] * r;
            }
        }
        self.z_sum.insert(mask, total.clone());
        total
    }
}

/// `R(G, w)` by the chosen route.
pub fn invariant_r(wg: &WeightedGraph, method: RMethod, cap: usize) -> Result<InvariantValue> {
    let value = match method {
        RMethod::Recursive => {
            let mut inv = Invariants::new(wg, cap)?;
            let all = inv.all();
            inv.r(all, method)?
        }
        // no path enumeration, so no cap
        RMethod::Completion => tau(&completion(wg)?)?,
    };
    let method = match method {
        RMethod::Recursive => InvariantMethod::Recursive,
        RMethod::Completion => InvariantMethod::Completion,
    };
    Ok(InvariantValue { value, method })
}

/// `Z(G, w)` by the chosen route.
pub fn invariant_z(wg: &WeightedGraph, method: ZMethod, cap: usize) -> Result<InvariantValue> {
    let mut inv = Invariants::new(wg, cap)?;
    let all = inv.all();
    Ok(InvariantValue {
        value: inv.z(all, method),
        method: match method {
            ZMethod::Recursive => InvariantMethod::Recursive,
            ZMethod::Pathsum => InvariantMethod::Pathsum,
        },
    })
}

/// Families with a closed form for `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFamily {
    /// `P_n` with every weight 2.
    Path { n: usize },
    /// `K_n` with every weight `m`.
    Complete { n: usize, m: i64 },
    /// The lollipop `L_{m,n}` with weights `d_v + k` on the clique and 2 on
    /// the path.
    Lollipop { m: usize, n: usize, k: i64 },
}

impl ClosedFamily {
    fn validate(self) -> Result<()> {
        let bad = match self {
            Self::Path { n } => n == 0,
            Self::Complete { n, .. } => n == 0,
            Self::Lollipop { m, n, k } => m < 2 || n < 1 || k < 0,
        };
        if bad {
            Err(Error::InvalidParams(format!("{self:?}")))
        } else {
            Ok(())
        }
    }

    /// The weighted graph the closed form describes.
    pub fn weighted_graph(self) -> Result<WeightedGraph> {
        use crate::generators::{generate_family, Family};
        self.validate()?;
        match self {
            Self::Path { n } => {
                let g = generate_family(&Family::Path { n })?;
                WeightedGraph::new(g, vec![2; n])
            }
            Self::Complete { n, m } => {
                let g = generate_family(&Family::Complete { n })?;
                WeightedGraph::new(g, vec![m; n])
            }
            Self::Lollipop { m, n, k } => {
                let g = generate_family(&Family::Lollipop { m, n })?;
                let weights = (0..m + n)
                    .map(|v| if v < m { g.degree(v) as i64 + k } else { 2 })
                    .collect();
                WeightedGraph::new(g, weights)
            }
        }
    }
}

/// Evaluates the closed form for `R` on one of the [`ClosedFamily`] inputs.
pub fn r_closed(family: ClosedFamily) -> Result<InvariantValue> {
    family.validate()?;
    let value = match family {
        ClosedFamily::Path { n } => BigInt::from(n + 1),
        ClosedFamily::Complete { n, m } => {
            (BigInt::from(m) - n + 1) * num_traits::pow(BigInt::from(m + 1), n - 1)
        }
        ClosedFamily::Lollipop { m, n, k } => {
            let mk = BigInt::from(m as i64 + k);
            let pow = num_traits::pow(mk.clone(), m - 2);
            let n1 = BigInt::from(n + 1);
            (&mk * &n1 - n) * (k + 1) * &pow - BigInt::from(m - 1) * &pow * &n1
        }
    };
    Ok(InvariantValue {
        value,
        method: InvariantMethod::Closed,
    })
}

/// The three quantities of the identity
/// `R(G - x, d_G) = sum over x-y paths P of R(G - P, d_G) = tau(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDeletionIdentity {
    pub deleted_vertex: BigInt,
    pub path_sum: BigInt,
    pub tau: BigInt,
}

impl VertexDeletionIdentity {
    pub fn holds(&self) -> bool {
        self.deleted_vertex == self.tau && self.path_sum == self.tau
    }
}

/// Evaluates both sides of the vertex-deletion / path-sum identity for
/// `R(., d_G)` on a connected graph.
pub fn check_eqgreen13(g: &Graph, x: usize, y: usize, cap: usize) -> Result<VertexDeletionIdentity> {
    g.ensure_connected()?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::InvalidParams("x and y must differ".into()));
    }
    let mut inv = Invariants::with_degrees(g, cap)?;
    let all = inv.all();
    let deleted_vertex = inv.r(all & !(1 << x), RMethod::Recursive)?;
    let mut path_sum = BigInt::zero();
    for p in inv.paths_to(x, y, all) {
        path_sum += inv.r(all & !p, RMethod::Recursive)?;
    }
    Ok(VertexDeletionIdentity {
        deleted_vertex,
        path_sum,
        tau: tau(&g.to_multigraph())?,
    })
}
