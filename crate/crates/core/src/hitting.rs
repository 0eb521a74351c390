//! Hitting times `H(x, y)` of the simple random walk, by six routes:
//!
//! | method     | kind  | route                                                    |
//! |------------|-------|----------------------------------------------------------|
//! | `oracle`   | exact | first-step linear system                                 |
//! | `spanning` | exact | spanning-tree counts of contractions along simple paths   |
//! | `rz`       | exact | the `R`/`Z` invariants of vertex- and path-deleted graphs |
//! | `tetali`   | exact | effective resistances from spanning-tree ratios          |
//! | `spectral` | float | eigenpairs of the normalized Laplacian                   |
//! | `green`    | float | discrete Green function of the normalized Laplacian      |
//!
//! plus a seeded Monte Carlo estimate.
//!
//! The spectral route uses the squared first term `v_ky^2 / d_y`; the
//! unsquared variant is dimensionally inconsistent with the cross term and
//! disagrees with the exact methods.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{contract, ensure_within_cap, full_mask, simple_paths, Graph};
use crate::invariants::{Invariants, RMethod, ZMethod};
use crate::linalg::{eigh, ratio, rational_to_f64, solve_exact, tau, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactMethod {
    Oracle,
    Spanning,
    Rz,
    Tetali,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FloatMethod {
    Spectral,
    Green,
}

/// Any method that can appear in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact(ExactMethod),
    Float(FloatMethod),
    MonteCarlo,
}

impl ExactMethod {
    pub const ALL: [ExactMethod; 4] = [Self::Oracle, Self::Spanning, Self::Rz, Self::Tetali];

    pub fn name(self) -> &'static str {
        match self {
            Self::Oracle => "oracle",
            Self::Spanning => "spanning",
            Self::Rz => "rz",
            Self::Tetali => "tetali",
        }
    }

    /// Whether the method enumerates simple paths and is subject to the cap.
    pub fn enumerates_paths(self) -> bool {
        matches!(self, Self::Spanning | Self::Rz)
    }
}

impl FloatMethod {
    pub const ALL: [FloatMethod; 2] = [Self::Spectral, Self::Green];

    pub fn name(self) -> &'static str {
        match self {
            Self::Spectral => "spectral",
            Self::Green => "green",
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exact(m) => m.name(),
            Self::Float(m) => m.name(),
            Self::MonteCarlo => "mc",
        }
    }

    pub fn all() -> Vec<Method> {
        ExactMethod::ALL
            .into_iter()
            .map(Method::Exact)
            .chain(FloatMethod::ALL.into_iter().map(Method::Float))
            .chain([Method::MonteCarlo])
            .collect()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "oracle" => Method::Exact(ExactMethod::Oracle),
            "spanning" => Method::Exact(ExactMethod::Spanning),
            "rz" => Method::Exact(ExactMethod::Rz),
            "tetali" => Method::Exact(ExactMethod::Tetali),
            "spectral" => Method::Float(FloatMethod::Spectral),
            "green" => Method::Float(FloatMethod::Green),
            "mc" | "montecarlo" => Method::MonteCarlo,
            other => return Err(Error::InvalidParams(format!("unknown method `{other}`"))),
        })
    }
}

fn check_pair(g: &Graph, x: usize, y: usize) -> Result<()> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    g.ensure_connected()
}

/// Per-graph caches shared by the exact and float routes, so that sweeps
/// over many pairs do not redo the expensive work.
pub struct HittingEngine<'g> {
    g: &'g Graph,
    cap: usize,
    tau_g: BigInt,
    oracle: HashMap<usize, Vec<BigRational>>,
    contracted: HashMap<Vec<usize>, BigInt>,
    invariants: Option<Invariants>,
    spectral: Option<SpectralData>,
}

struct SpectralData {
    sd: SpectralDecomposition,
    green: Vec<Vec<f64>>,
}

impl<'g> HittingEngine<'g> {
    pub fn new(g: &'g Graph, cap: usize) -> Result<Self> {
        g.ensure_connected()?;
        Ok(Self {
            g,
            cap,
            tau_g: tau(&g.to_multigraph())?,
            oracle: HashMap::new(),
            contracted: HashMap::new(),
            invariants: None,
            spectral: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// Number of spanning trees of the graph.
    pub fn tau(&self) -> &BigInt {
        &self.tau_g
    }

    pub fn exact(&mut self, x: usize, y: usize, method: ExactMethod) -> Result<BigRational> {
        check_pair(self.g, x, y)?;
        match method {
            ExactMethod::Oracle => self.oracle(x, y),
            ExactMethod::Spanning => self.spanning(x, y),
            ExactMethod::Rz => self.rz(x, y),
            ExactMethod::Tetali => self.tetali(x, y),
        }
    }

    pub fn float(&mut self, x: usize, y: usize, method: FloatMethod) -> Result<f64> {
        check_pair(self.g, x, y)?;
        if x == y {
            return Ok(0.0);
        }
        let g = self.g;
        let data = self.spectral_data()?;
        let d = |v: usize| g.degree(v) as f64;
        let vol = g.volume() as f64;
        let cross = (d(x) * d(y)).sqrt();
        Ok(match method {
            FloatMethod::Spectral => {
                let sum: f64 = data
                    .sd
                    .eigenvalues
                    .iter()
                    .zip(&data.sd.eigenvectors)
                    .skip(1)
                    .map(|(&lambda, v)| (v[y] * v[y] / d(y) - v[x] * v[y] / cross) / lambda)
                    .sum();
                vol * sum
            }
            FloatMethod::Green => {
                vol * (data.green[y][y] / d(y) - data.green[x][y] / cross)
            }
        })
    }

    /// `H(., y)` for every start vertex, by the first-step equations.
    pub fn oracle_column(&mut self, y: usize) -> Result<&[BigRational]> {
        self.g.check_vertex(y)?;
        if !self.oracle.contains_key(&y) {
            let col = oracle_column(self.g, y)?;
            self.oracle.insert(y, col);
        }
        Ok(&self.oracle[&y])
    }

    fn oracle(&mut self, x: usize, y: usize) -> Result<BigRational> {
        Ok(self.oracle_column(y)?[x].clone())
    }

    /// `tau(G / set)` with `set` sorted.
    fn contracted_tau(&mut self, set: Vec<usize>) -> Result<BigInt> {
        if let Some(t) = self.contracted.get(&set) {
            return Ok(t.clone());
        }
        let t = tau(&contract(self.g, &set)?)?;
        self.contracted.insert(set, t.clone());
        Ok(t)
    }

    fn spanning(&mut self, x: usize, y: usize) -> Result<BigRational> {
        ensure_within_cap(self.g.n(), self.cap)?;
        if x == y {
            return Ok(BigRational::zero());
        }
        let mut total = BigInt::zero();
        // every path to y contains y, so u = y contributes nothing
        let paths: Vec<_> = simple_paths(self.g, x, None, &[y], self.cap)?.collect();
        for p in paths {
            let mut set = p.vertices().to_vec();
            set.push(y);
            set.sort_unstable();
            let count = self.contracted_tau(set)?;
            total += count * self.g.degree(p.end());
        }
        Ok(BigRational::new(total, self.tau_g.clone()))
    }

    fn rz(&mut self, x: usize, y: usize) -> Result<BigRational> {
        ensure_within_cap(self.g.n(), self.cap)?;
        if x == y {
            return Ok(BigRational::zero());
        }
        if self.invariants.is_none() {
            self.invariants = Some(Invariants::with_degrees(self.g, self.cap)?);
        }
        let inv = self.invariants.as_mut().expect("initialised above");
        let all = full_mask(self.g.n());
        let ybit = 1u64 << y;

        let mut bracket = inv.z(all & !ybit, ZMethod::Recursive);
        for p in inv.paths_to(x, y, all) {
            bracket -= inv.z(all & !p, ZMethod::Recursive);
        }
        // vertex-disjoint pairs: P1 from x to u, P2 from y to v
        for (p1, u) in inv.paths_from(x, all) {
            if p1 & ybit != 0 {
                continue;
            }
            for (p2, v) in inv.paths_from(y, all & !p1) {
                let r = inv.r(all & !(p1 | p2), RMethod::Recursive)?;
                bracket += inv.weight(u) * inv.weight(v) * r;
            }
        }
        let denom = &self.tau_g * self.g.volume();
        Ok(BigRational::new(bracket, denom))
    }

    /// Effective resistance between `a` and `b` as a spanning-tree ratio.
    pub fn resistance(&mut self, a: usize, b: usize) -> Result<BigRational> {
        check_pair(self.g, a, b)?;
        if a == b {
            return Ok(BigRational::zero());
        }
        let t = self.contracted_tau(vec![a.min(b), a.max(b)])?;
        Ok(BigRational::new(t, self.tau_g.clone()))
    }

    fn tetali(&mut self, x: usize, y: usize) -> Result<BigRational> {
        let rxy = self.resistance(x, y)?;
        let mut total = BigRational::zero();
        for z in 0..self.g.n() {
            let term = &rxy + self.resistance(y, z)? - self.resistance(x, z)?;
            total += term * ratio(self.g.degree(z));
        }
        Ok(total / ratio(2))
    }

    fn spectral_data(&mut self) -> Result<&SpectralData> {
        if self.spectral.is_none() {
            let sd = eigh(&normalized_laplacian(self.g))?;
            let n = self.g.n();
            let mut green = vec![vec![0.0; n]; n];
            for (lambda, v) in sd.eigenvalues.iter().zip(&sd.eigenvectors).skip(1) {
                for i in 0..n {
                    for j in 0..n {
                        green[i][j] += v[i] * v[j] / lambda;
                    }
                }
            }
            self.spectral = Some(SpectralData { sd, green });
        }
        Ok(self.spectral.as_ref().expect("initialised above"))
    }
}

/// `I - D^{-1/2} A D^{-1/2}`. Isolated vertices get a zero row.
pub fn normalized_laplacian(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut m = vec![vec![0.0; n]; n];
    for u in 0..n {
        if g.degree(u) > 0 {
            m[u][u] = 1.0;
        }
        for &v in g.neighbors(u) {
            m[u][v] = -1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt();
        }
    }
    m
}

/// Eigendecomposition of the normalized Laplacian of a connected graph.
pub fn spectral_decomposition(g: &Graph) -> Result<SpectralDecomposition> {
    g.ensure_connected()?;
    eigh(&normalized_laplacian(g))
}

fn oracle_column(g: &Graph, y: usize) -> Result<Vec<BigRational>> {
    g.ensure_connected()?;
    let n = g.n();
    // unknowns: h(v) for v != y, in vertex order
    let idx: Vec<Option<usize>> = {
        let mut next = 0;
        (0..n)
            .map(|v| {
                (v != y).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let k = n - 1;
    let mut a = vec![vec![BigRational::zero(); k]; k];
    let mut b = vec![BigRational::zero(); k];
    for v in (0..n).filter(|&v| v != y) {
        let i = idx[v].unwrap();
        a[i][i] = ratio(g.degree(v));
        b[i] = ratio(g.degree(v));
        for &u in g.neighbors(v) {
            if let Some(j) = idx[u] {
                a[i][j] -= ratio(1);
            }
        }
    }
    let h = solve_exact(&a, &b)?;
    Ok((0..n)
        .map(|v| idx[v].map_or_else(BigRational::zero, |i| h[i].clone()))
        .collect())
}

/// Exact `H(x, y)` from the first-step equations
/// `h(y) = 0`, `h(v) = 1 + mean of h over the neighbors of v`.
pub fn hit_oracle(g: &Graph, x: usize, y: usize) -> Result<BigRational> {
    check_pair(g, x, y)?;
    Ok(oracle_column(g, y)?.swap_remove(x))
}

/// Exact `H(x, y)` by one of the formula routes.
pub fn hit_exact(g: &Graph, x: usize, y: usize, method: ExactMethod, cap: usize) -> Result<BigRational> {
    HittingEngine::new(g, cap)?.exact(x, y, method)
}

/// Floating-point `H(x, y)` from the normalized Laplacian spectrum.
pub fn hit_float(g: &Graph, x: usize, y: usize, method: FloatMethod) -> Result<f64> {
    HittingEngine::new(g, 0)?.float(x, y, method)
}

/// Effective resistance `tau(G / {x, y}) / tau(G)`.
pub fn resistance(g: &Graph, x: usize, y: usize) -> Result<BigRational> {
    HittingEngine::new(g, 0)?.resistance(x, y)
}

/// Commute time `vol(G) * R_xy`.
pub fn commute(g: &Graph, x: usize, y: usize) -> Result<BigRational> {
    Ok(resistance(g, x, y)? * ratio(g.volume()))
}

/// Identifier of the generator behind [`hit_montecarlo`]: ChaCha8 seeded by
/// `seed_from_u64(seed)`, one stream per chunk.
pub const MC_RNG_ID: &str = "chacha8-stream-per-chunk-v1";

/// Walks are split into this many chunks, each on its own RNG stream, so the
/// estimate does not depend on the thread count.
pub const MC_CHUNKS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub walks: u64,
    pub rng: &'static str,
}

/// Monte Carlo estimate of `H(x, y)`: mean and standard error of the
/// first-passage step counts of `walks` independent walks.
pub fn hit_montecarlo(g: &Graph, x: usize, y: usize, walks: u64, seed: u64) -> Result<McEstimate> {
    check_pair(g, x, y)?;
    if walks == 0 {
        return Err(Error::InvalidParams("walks must be at least 1".into()));
    }
    let chunks = MC_CHUNKS as u64;
    let sums: Vec<(u128, u128)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = walks / chunks + u64::from(c < walks % chunks);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let (mut s, mut ss) = (0u128, 0u128);
            for _ in 0..count {
                let mut v = x;
                let mut steps = 0u128;
                while v != y {
                    let nb = g.neighbors(v);
                    v = nb[rng.gen_range(0..nb.len())];
                    steps += 1;
                }
                s += steps;
                ss += steps * steps;
            }
            (s, ss)
        })
        .collect();
    let (s, ss) = sums
        .iter()
        .fold((0u128, 0u128), |(a, b), &(c, d)| (a + c, b + d));
    let nw = walks as f64;
    let mean = s as f64 / nw;
    let stderr = if walks > 1 {
        // exact integer numerator: N * sum(x^2) - (sum x)^2
        let num = (walks as u128) * ss - s * s;
        let var = num as f64 / (nw * (nw - 1.0));
        (var / nw).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        stderr,
        walks,
        rng: MC_RNG_ID,
    })
}

/// Relative error `|approx - exact| / |exact|`, or `|approx|` when the
/// exact value is zero.
pub fn relative_error(approx: f64, exact: &BigRational) -> f64 {
    let e = rational_to_f64(exact);
    if e == 0.0 {
        approx.abs()
    } else {
        (approx - e).abs() / e.abs()
    }
}

/// Tolerance for the float methods against the exact value.
pub const FLOAT_REL_TOL: f64 = 1e-8;

/// Every requested method's value for one ordered pair.
#[derive(Debug, Clone)]
pub struct HitReport {
    pub x: usize,
    pub y: usize,
    pub exact: Vec<(ExactMethod, BigRational)>,
    pub floats: Vec<(FloatMethod, f64)>,
    pub mc: Option<McEstimate>,
    pub exact_agree: bool,
    /// Largest relative error of a float method against the first exact
    /// value, when both kinds are present.
    pub float_max_rel_err: Option<f64>,
}

impl HitReport {
    pub fn floats_within_tolerance(&self) -> bool {
        self.float_max_rel_err.is_none_or(|e| e <= FLOAT_REL_TOL)
    }
}

/// Monte Carlo settings for [`hit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub walks: u64,
    pub seed: u64,
}

/// Runs the requested methods on `(x, y)` and records their agreement.
pub fn hit_report(
    engine: &mut HittingEngine<'_>,
    x: usize,
    y: usize,
    methods: &[Method],
    mc: Option<McConfig>,
) -> Result<HitReport> {
    let mut exact = Vec::new();
    let mut floats = Vec::new();
    let mut mc_est = None;
    for &m in methods {
        match m {
            Method::Exact(e) => exact.push((e, engine.exact(x, y, e)?)),
            Method::Float(f) => floats.push((f, engine.float(x, y, f)?)),
            Method::MonteCarlo => {
                let cfg = mc.ok_or_else(|| Error::InvalidParams("mc requires walks and seed".into()))?;
                mc_est = Some(hit_montecarlo(engine.graph(), x, y, cfg.walks, cfg.seed)?);
            }
        }
    }
    let exact_agree = exact.windows(2).all(|w| w[0].1 == w[1].1);
    let float_max_rel_err = exact.first().and_then(|(_, e)| {
        floats
            .iter()
            .map(|(_, f)| relative_error(*f, e))
            .reduce(f64::max)
    });
    Ok(HitReport {
        x,
        y,
        exact,
        floats,
        mc: mc_est,
        exact_agree,
        float_max_rel_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_family, Family};
    use crate::graph::DEFAULT_PATH_CAP as CAP;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gen(s: &str) -> Graph {
        generate_family(&s.parse::<Family>().unwrap()).unwrap()
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(hit_oracle(&gen("complete:2"), 0, 1).unwrap(), q(1, 1));
        assert_eq!(hit_oracle(&gen("complete:3"), 0, 1).unwrap(), q(2, 1));
        for n in 2..=6usize {
            let expected = ((n - 1) * (n - 1)) as i64;
            assert_eq!(hit_oracle(&gen(&format!("path:{n}")), 0, n - 1).unwrap(), q(expected, 1));
        }
    }

    #[test]
    fn spanning_on_p3() {
        assert_eq!(hit_exact(&gen("path:3"), 0, 2, ExactMethod::Spanning, CAP).unwrap(), q(4, 1));
    }

    #[test]
    fn tetali_on_triangle() {
        let g = gen("complete:3");
        assert_eq!(resistance(&g, 0, 1).unwrap(), q(2, 3));
        assert_eq!(hit_exact(&g, 0, 1, ExactMethod::Tetali, CAP).unwrap(), q(2, 1));
    }

    #[test]
    fn lollipop_all_exact_methods() {
        for n in 2..=4usize {
            let g = gen(&format!("lollipop:{n},{n}"));
            let expected = (n * n * n + n - 1) as i64;
            for m in ExactMethod::ALL {
                assert_eq!(hit_exact(&g, 0, 2 * n - 1, m, CAP).unwrap(), q(expected, 1), "{m:?}");
            }
        }
    }

    #[test]
    fn float_methods_on_k2() {
        let g = gen("complete:2");
        for m in FloatMethod::ALL {
            assert!((hit_float(&g, 0, 1, m).unwrap() - 1.0).abs() < 1e-10);
            assert!(hit_float(&g, 1, 1, m).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn diagonal_is_zero() {
        let g = gen("lollipop:3,2");
        let mut engine = HittingEngine::new(&g, CAP).unwrap();
        for v in 0..g.n() {
            for m in ExactMethod::ALL {
                assert!(engine.exact(v, v, m).unwrap().is_zero());
            }
            for m in FloatMethod::ALL {
                assert!(engine.float(v, v, m).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn resistance_and_commute() {
        let p3 = gen("path:3");
        assert_eq!(resistance(&p3, 0, 2).unwrap(), q(2, 1));
        assert_eq!(resistance(&p3, 1, 1).unwrap(), q(0, 1));
        assert_eq!(commute(&p3, 0, 2).unwrap(), q(8, 1));
        assert_eq!(commute(&gen("complete:2"), 0, 1).unwrap(), q(2, 1));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edge_list(&[(0, 1)], 3).unwrap();
        assert_eq!(hit_oracle(&g, 0, 1).unwrap_err(), Error::Disconnected);
        assert_eq!(hit_exact(&g, 0, 1, ExactMethod::Tetali, CAP).unwrap_err(), Error::Disconnected);
        assert_eq!(hit_float(&g, 0, 1, FloatMethod::Green).unwrap_err(), Error::Disconnected);
        assert_eq!(hit_montecarlo(&g, 0, 1, 10, 1).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn cap_applies_to_path_methods_only() {
        let g = gen("path:6");
        assert!(matches!(
            hit_exact(&g, 0, 5, ExactMethod::Spanning, 5),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert!(matches!(
            hit_exact(&g, 0, 5, ExactMethod::Rz, 5),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert_eq!(hit_exact(&g, 0, 5, ExactMethod::Tetali, 5).unwrap(), q(25, 1));
    }

    #[test]
    fn montecarlo_k2_is_exact() {
        let est = hit_montecarlo(&gen("complete:2"), 0, 1, 10_000, 3).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn montecarlo_p3_and_lollipop() {
        let p3 = gen("path:3");
        let est = hit_montecarlo(&p3, 0, 2, 100_000, 11).unwrap();
        assert!((est.mean - 4.0).abs() <= 3.0 * est.stderr, "{est:?}");

        let lol = gen("lollipop:3,3");
        let exact = rational_to_f64(&hit_oracle(&lol, 0, 5).unwrap());
        let est = hit_montecarlo(&lol, 0, 5, 100_000, 12).unwrap();
        assert!((est.mean - exact).abs() <= 3.0 * est.stderr, "{est:?} vs {exact}");
    }

    #[test]
    fn montecarlo_is_reproducible() {
        let g = gen("cycle:5");
        let a = hit_montecarlo(&g, 0, 2, 5_000, 99).unwrap();
        let b = hit_montecarlo(&g, 0, 2, 5_000, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, hit_montecarlo(&g, 0, 2, 5_000, 100).unwrap());
    }

    #[test]
    fn method_names_parse() {
        for m in Method::all() {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
