//! Command-line front end. Everything here is a thin layer over the library:
//! argument parsing, graph loading, and report rendering.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input,
//! 3 the path-enumeration cap was exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::analysis::{
    hit_cut_edge, hit_lollipop_closed, hit_tree_closed, hit_unicycle_closed, reversibility_report,
    verify_bounds_with, BoundReport, UnicycleDescriptor,
};
use crate::error::{Error, Result};
use crate::generators::{generate_family, Family};
use crate::graph::{Graph, WeightedGraph, DEFAULT_PATH_CAP};
use crate::hitting::{
    hit_montecarlo, hit_report, ExactMethod, FloatMethod, HitReport, HittingEngine, McConfig,
    Method, FLOAT_REL_TOL,
};
use crate::invariants::{check_eqgreen13, invariant_r, invariant_z, RMethod, ZMethod};
use crate::linalg::{format_rational, ratio};

/// Environment variable overriding the default path-enumeration cap.
pub const CAP_ENV: &str = "HITLAB_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hitlab", version, about = "Exact random-walk hitting times, cross-checked")]
pub struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Hitting time for one ordered pair by the chosen methods
    Hit(CommonArgs),
    /// Hitting times for every ordered pair
    AllPairs(CommonArgs),
    /// Number of spanning trees
    Tau(CommonArgs),
    /// Effective resistance between x and y
    Resist(CommonArgs),
    /// Commute time between x and y
    Commute(CommonArgs),
    /// R and Z invariants by every route
    Invariants(CommonArgs),
    /// Full differential verification sweep
    Verify(CommonArgs),
    /// Monte Carlo estimate of the hitting time
    Mc(CommonArgs),
    /// Upper bounds on hitting times
    Bounds(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Graph family, e.g. `lollipop:5,5` or `random:n=8,seed=42`
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Edge-list file (`n m` header, then `u v` lines)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
    /// Comma-separated: oracle,spanning,rz,tetali,spectral,green,mc
    #[arg(long, value_delimiter = ',')]
    methods: Vec<String>,
    /// Comma-separated vertex weights for `invariants` (default: degrees)
    #[arg(long, value_delimiter = ',')]
    weights: Vec<i64>,
    /// Path-enumeration cap (default: $HITLAB_CAP, else 14)
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    walks: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for the float methods against the exact value
    #[arg(long, default_value_t = FLOAT_REL_TOL)]
    float_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Hit,
    AllPairs,
    Tau,
    Resist,
    Commute,
    Invariants,
    Verify,
    Mc,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    Family(String),
    File(PathBuf),
    Text(String),
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: InputSource,
    pub x: Option<usize>,
    pub y: Option<usize>,
    pub methods: Vec<Method>,
    pub weights: Option<Vec<i64>>,
    pub cap: usize,
    pub walks: u64,
    pub seed: u64,
    pub float_tol: f64,
    pub format: Format,
}

impl RunConfig {
    /// Defaults for `command` on `input`.
    pub fn new(command: Command, input: InputSource) -> Self {
        Self {
            command,
            input,
            x: None,
            y: None,
            methods: default_methods(),
            weights: None,
            cap: DEFAULT_PATH_CAP,
            walks: 100_000,
            seed: 0,
            float_tol: FLOAT_REL_TOL,
            format: Format::Text,
        }
    }
}

fn default_methods() -> Vec<Method> {
    ExactMethod::ALL
        .into_iter()
        .map(Method::Exact)
        .chain(FloatMethod::ALL.into_iter().map(Method::Float))
        .collect()
}

/// `--cap` wins over the environment, which wins over the default.
pub fn resolve_cap(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("{CAP_ENV}=`{s}` is not an integer"))),
        None => Ok(DEFAULT_PATH_CAP),
    }
}

impl Cli {
    pub fn into_config(self, env_cap: Option<&str>) -> Result<RunConfig> {
        let (command, args) = match self.command {
            CommandArgs::Hit(a) => (Command::Hit, a),
            CommandArgs::AllPairs(a) => (Command::AllPairs, a),
            CommandArgs::Tau(a) => (Command::Tau, a),
            CommandArgs::Resist(a) => (Command::Resist, a),
            CommandArgs::Commute(a) => (Command::Commute, a),
            CommandArgs::Invariants(a) => (Command::Invariants, a),
            CommandArgs::Verify(a) => (Command::Verify, a),
            CommandArgs::Mc(a) => (Command::Mc, a),
            CommandArgs::Bounds(a) => (Command::Bounds, a),
        };
        let input = match (args.family, args.input) {
            (Some(f), None) => InputSource::Family(f),
            (None, Some(p)) => InputSource::File(p),
            _ => {
                return Err(Error::InvalidParams(
                    "exactly one of --family or --input is required".into(),
                ))
            }
        };
        if args.float_tol.is_nan() || args.float_tol < 0.0 {
            return Err(Error::InvalidParams("--float-tol must be a non-negative number".into()));
        }
        let methods = if args.methods.is_empty() {
            default_methods()
        } else {
            args.methods
                .iter()
                .map(|m| m.parse())
                .collect::<Result<Vec<Method>>>()?
        };
        Ok(RunConfig {
            command,
            input,
            x: args.x,
            y: args.y,
            methods,
            weights: (!args.weights.is_empty()).then_some(args.weights),
            cap: resolve_cap(args.cap, env_cap)?,
            walks: args.walks,
            seed: args.seed,
            float_tol: args.float_tol,
            format: args.format,
        })
    }
}

/// A graph together with where it came from.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub family: Option<Family>,
    pub labels: Vec<String>,
}

impl LoadedGraph {
    fn from_family(family: Family) -> Result<Self> {
        Ok(Self {
            graph: generate_family(&family)?,
            labels: family.labels(),
            family: Some(family),
        })
    }

    fn from_graph(graph: Graph) -> Self {
        let labels = (0..graph.n()).map(|v| format!("v{v}")).collect();
        Self {
            graph,
            family: None,
            labels,
        }
    }
}

pub fn load_input(source: &InputSource) -> Result<LoadedGraph> {
    match source {
        InputSource::Family(spec) => LoadedGraph::from_family(spec.parse()?),
        InputSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(LoadedGraph::from_graph(Graph::parse_edge_list(&text)?))
        }
        InputSource::Text(text) => Ok(LoadedGraph::from_graph(Graph::parse_edge_list(text)?)),
    }
}

/// Reads a graph from a family spec (`lollipop:2,2`) or edge-list text.
pub fn parse_graph_input(source: &str) -> Result<Graph> {
    let looks_like_text = source.trim_start().starts_with(|c: char| c.is_ascii_digit() || c == '#');
    let input = if looks_like_text {
        InputSource::Text(source.to_string())
    } else {
        InputSource::Family(source.to_string())
    };
    Ok(load_input(&input)?.graph)
}

/// Result of [`run`]: exit code plus the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SizeCapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

/// Parses arguments (including the program name) and runs.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome { code, stdout, stderr };
        }
    };
    let env = std::env::var(CAP_ENV).ok();
    match cli.into_config(env.as_deref()) {
        Ok(config) => run(&config),
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    Outcome {
        code: exit_code_for(e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Executes one command.
pub fn run(config: &RunConfig) -> Outcome {
    match execute(config) {
        Ok(report) => Outcome {
            code: if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED },
            stdout: report.render(config.format),
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub graph: GraphInfo,
    pub results: Vec<ResultRow>,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    #[serde(skip)]
    pub float_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_label: Option<String>,
    pub method: String,
    pub value: String,
    pub kind: &'static str,
    pub bounds: Vec<BoundRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walks: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub kind: &'static str,
    pub bound: String,
    pub slack: String,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub exact_ok: bool,
    pub float_max_rel_err: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Report {
    fn new(loaded: &LoadedGraph, float_tol: f64) -> Self {
        Self {
            graph: GraphInfo {
                n: loaded.graph.n(),
                m: loaded.graph.m(),
                family: loaded.family.as_ref().map(ToString::to_string),
            },
            results: Vec::new(),
            agreement: Agreement {
                exact_ok: true,
                float_max_rel_err: None,
            },
            checks: Vec::new(),
            float_tol,
        }
    }

    pub fn passed(&self) -> bool {
        self.agreement.exact_ok
            && self.agreement.float_max_rel_err.is_none_or(|e| e <= self.float_tol)
            && self.checks.iter().all(|c| c.passed)
            && self.results.iter().all(|r| r.bounds.iter().all(|b| b.satisfied))
    }

    fn note_float_error(&mut self, err: Option<f64>) {
        if let Some(e) = err {
            let cur = self.agreement.float_max_rel_err.get_or_insert(0.0);
            *cur = cur.max(e);
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckRow {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("x,y,method,kind,value\n");
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.results {
            let _ = writeln!(out, "{},{},{},{},{}", opt(r.x), opt(r.y), r.method, r.kind, r.value);
        }
        for c in &self.checks {
            let _ = writeln!(out, "#check,{},{}", c.name, if c.passed { "pass" } else { "FAIL" });
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = format!("graph: n={} m={}", self.graph.n, self.graph.m);
        if let Some(f) = &self.graph.family {
            let _ = write!(out, " family={f}");
        }
        out.push('\n');
        for r in &self.results {
            match (r.x, r.y) {
                (Some(x), Some(y)) => {
                    let xl = r.x_label.as_deref().unwrap_or("");
                    let yl = r.y_label.as_deref().unwrap_or("");
                    let _ = write!(out, "{x}({xl}) -> {y}({yl}) {:<10} {}", r.method, r.value);
                }
                _ => {
                    let _ = write!(out, "{:<14} {}", r.method, r.value);
                }
            }
            if let Some(se) = &r.stderr {
                let _ = write!(out, " +/- {se} ({} walks, {})", r.walks.unwrap_or(0), r.rng.unwrap_or(""));
            }
            out.push('\n');
            for b in &r.bounds {
                let _ = writeln!(
                    out,
                    "    {:<10} bound {} slack {} {}",
                    b.kind,
                    b.bound,
                    b.slack,
                    if b.satisfied { "ok" } else { "VIOLATED" }
                );
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "exact_ok={} float_max_rel_err={}",
            self.agreement.exact_ok,
            self.agreement
                .float_max_rel_err
                .map_or_else(|| "n/a".to_string(), format_float)
        );
        out
    }
}

/// `%.15g`-style formatting: 15 significant digits, trailing zeros trimmed.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.14e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..15).contains(&exp) {
        trim(format!("{:.*}", (14 - exp) as usize, v))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn require_pair(config: &RunConfig, g: &Graph) -> Result<(usize, usize)> {
    let x = config.x.ok_or_else(|| Error::InvalidParams("--x is required".into()))?;
    let y = config.y.ok_or_else(|| Error::InvalidParams("--y is required".into()))?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    Ok((x, y))
}

fn pair_row(loaded: &LoadedGraph, x: usize, y: usize, method: &str, value: String, kind: &'static str) -> ResultRow {
    ResultRow {
        x: Some(x),
        y: Some(y),
        x_label: loaded.labels.get(x).cloned(),
        y_label: loaded.labels.get(y).cloned(),
        method: method.to_string(),
        value,
        kind,
        bounds: Vec::new(),
        stderr: None,
        walks: None,
        rng: None,
    }
}

fn scalar_row(method: &str, value: String) -> ResultRow {
    ResultRow {
        x: None,
        y: None,
        x_label: None,
        y_label: None,
        method: method.to_string(),
        value,
        kind: "exact",
        bounds: Vec::new(),
        stderr: None,
        walks: None,
        rng: None,
    }
}

fn push_hit_rows(report: &mut Report, loaded: &LoadedGraph, hr: &HitReport) {
    for (m, v) in &hr.exact {
        report
            .results
            .push(pair_row(loaded, hr.x, hr.y, m.name(), format_rational(v), "exact"));
    }
    for (m, v) in &hr.floats {
        report
            .results
            .push(pair_row(loaded, hr.x, hr.y, m.name(), format_float(*v), "float"));
    }
    if let Some(mc) = &hr.mc {
        let mut row = pair_row(loaded, hr.x, hr.y, "mc", format_float(mc.mean), "mc");
        row.stderr = Some(format_float(mc.stderr));
        row.walks = Some(mc.walks);
        row.rng = Some(mc.rng);
        report.results.push(row);
    }
    report.agreement.exact_ok &= hr.exact_agree;
    report.note_float_error(hr.float_max_rel_err);
}

fn bound_rows(b: &BoundReport) -> Vec<BoundRow> {
    b.checks
        .iter()
        .map(|c| BoundRow {
            kind: c.kind.name(),
            bound: c.bound.to_string(),
            slack: format_rational(&c.slack),
            satisfied: c.satisfied(),
        })
        .collect()
}

fn execute(config: &RunConfig) -> Result<Report> {
    let loaded = load_input(&config.input)?;
    let g = &loaded.graph;
    let mut report = Report::new(&loaded, config.float_tol);
    let mc = Some(McConfig {
        walks: config.walks,
        seed: config.seed,
    });
    match config.command {
        Command::Hit => {
            if config.methods.is_empty() {
                return Err(Error::InvalidParams("--methods must not be empty".into()));
            }
            let (x, y) = require_pair(config, g)?;
            let mut engine = HittingEngine::new(g, config.cap)?;
            let hr = hit_report(&mut engine, x, y, &config.methods, mc)?;
            push_hit_rows(&mut report, &loaded, &hr);
        }
        Command::AllPairs => {
            let mut engine = HittingEngine::new(g, config.cap)?;
            for x in 0..g.n() {
                for y in 0..g.n() {
                    let hr = hit_report(&mut engine, x, y, &config.methods, mc)?;
                    push_hit_rows(&mut report, &loaded, &hr);
                }
            }
        }
        Command::Tau => {
            let t = crate::linalg::tau(&g.to_multigraph())?;
            report.results.push(scalar_row("tau", t.to_string()));
        }
        Command::Resist | Command::Commute => {
            let (x, y) = require_pair(config, g)?;
            let mut engine = HittingEngine::new(g, config.cap)?;
            let r = engine.resistance(x, y)?;
            let (name, value) = if config.command == Command::Resist {
                ("resistance", r)
            } else {
                ("commute", r * ratio(g.volume()))
            };
            report
                .results
                .push(pair_row(&loaded, x, y, name, format_rational(&value), "exact"));
        }
        Command::Invariants => invariants_command(config, &loaded, &mut report)?,
        Command::Mc => {
            let (x, y) = require_pair(config, g)?;
            let est = hit_montecarlo(g, x, y, config.walks, config.seed)?;
            let mut row = pair_row(&loaded, x, y, "mc", format_float(est.mean), "mc");
            row.stderr = Some(format_float(est.stderr));
            row.walks = Some(est.walks);
            row.rng = Some(est.rng);
            report.results.push(row);
        }
        Command::Bounds => {
            let mut engine = HittingEngine::new(g, config.cap)?;
            let pairs: Vec<(usize, usize)> = match (config.x, config.y) {
                (None, None) => (0..g.n()).flat_map(|x| (0..g.n()).map(move |y| (x, y))).collect(),
                _ => vec![require_pair(config, g)?],
            };
            for (x, y) in pairs {
                let b = verify_bounds_with(&mut engine, x, y)?;
                let mut row = pair_row(&loaded, x, y, "oracle", format_rational(&b.hitting_time), "exact");
                row.bounds = bound_rows(&b);
                report.results.push(row);
            }
        }
        Command::Verify => verify_command(config, &loaded, &mut report)?,
    }
    Ok(report)
}

fn invariants_command(config: &RunConfig, loaded: &LoadedGraph, report: &mut Report) -> Result<()> {
    let g = &loaded.graph;
    let wg = match &config.weights {
        Some(w) => WeightedGraph::new(g.clone(), w.clone())?,
        None => WeightedGraph::with_degrees(g),
    };
    let mut rs = vec![("R:recursive", invariant_r(&wg, RMethod::Recursive, config.cap)?.value)];
    if wg.check_weights_cover_degrees().is_ok() {
        rs.push(("R:completion", invariant_r(&wg, RMethod::Completion, config.cap)?.value));
    }
    let zs = vec![
        ("Z:recursive", invariant_z(&wg, ZMethod::Recursive, config.cap)?.value),
        ("Z:pathsum", invariant_z(&wg, ZMethod::Pathsum, config.cap)?.value),
    ];
    let r_ok = rs.windows(2).all(|w| w[0].1 == w[1].1);
    let z_ok = zs.windows(2).all(|w| w[0].1 == w[1].1);
    for (name, v) in rs.iter().chain(&zs) {
        report.results.push(scalar_row(name, v.to_string()));
    }
    report.agreement.exact_ok = r_ok && z_ok;
    Ok(())
}

fn verify_command(config: &RunConfig, loaded: &LoadedGraph, report: &mut Report) -> Result<()> {
    let g = &loaded.graph;
    let n = g.n();
    let mut engine = HittingEngine::new(g, config.cap)?;
    let methods: Vec<Method> = default_methods();

    // exact agreement and float tolerance over every ordered pair
    let mut hits: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    let mut mismatches = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let hr = hit_report(&mut engine, x, y, &methods, None)?;
            if !hr.exact_agree {
                mismatches.push((x, y));
            }
            hits[x][y] = hr.exact[0].1.clone();
            push_hit_rows(report, loaded, &hr);
        }
    }
    report.check(
        "exact_agreement",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("oracle = spanning = rz = tetali on all {} ordered pairs", n * n)
        } else {
            format!("disagreement at {mismatches:?}")
        },
    );
    let max_err = report.agreement.float_max_rel_err.unwrap_or(0.0);
    report.check(
        "float_tolerance",
        max_err <= config.float_tol,
        format!("max relative error {} (tolerance {})", format_float(max_err), format_float(config.float_tol)),
    );

    // commute identities
    let vol = ratio(g.volume());
    let mut commute_ok = true;
    let mut edge_ok = true;
    for x in 0..n {
        for y in x + 1..n {
            let kappa = &hits[x][y] + &hits[y][x];
            commute_ok &= kappa == engine.resistance(x, y)? * &vol;
            if g.has_edge(x, y) {
                edge_ok &= kappa <= ratio(2 * g.m());
            }
        }
    }
    report.check("commute_identity", commute_ok, "H(x,y) + H(y,x) = vol * R_xy");
    report.check("commute_edge_bound", edge_ok, "commute time <= 2m on every edge");

    // bounds
    let mut violations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let b = verify_bounds_with(&mut engine, x, y)?;
            for c in b.checks.iter().filter(|c| !c.satisfied()) {
                violations.push(format!("{}@({x},{y})", c.kind.name()));
            }
        }
    }
    report.check(
        "bounds",
        violations.is_empty(),
        if violations.is_empty() {
            "cubic, max_degree, edge and dominating bounds hold".to_string()
        } else {
            violations.join(" ")
        },
    );

    // invariant identities at degree weights
    let wg = WeightedGraph::with_degrees(g);
    let tau_g = engine.tau().clone();
    let r_rec = invariant_r(&wg, RMethod::Recursive, config.cap)?.value;
    let r_comp = invariant_r(&wg, RMethod::Completion, config.cap)?.value;
    report.check(
        "invariant_r_vanishes",
        r_rec.is_zero() && r_comp.is_zero(),
        format!("R(G,d_G): recursive {r_rec}, completion {r_comp}"),
    );
    let expected_z = BigInt::from(g.volume() * g.volume()) * &tau_g;
    let z_rec = invariant_z(&wg, ZMethod::Recursive, config.cap)?.value;
    let z_sum = invariant_z(&wg, ZMethod::Pathsum, config.cap)?.value;
    report.check(
        "invariant_z_volume",
        z_rec == expected_z && z_sum == expected_z,
        format!("Z(G,d_G): recursive {z_rec}, pathsum {z_sum}, vol^2 tau {expected_z}"),
    );
    let mut deletion_ok = true;
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            deletion_ok &= check_eqgreen13(g, x, y, config.cap)?.holds();
        }
    }
    report.check(
        "vertex_deletion_identity",
        deletion_ok,
        format!("R(G-x,d_G) = path sum = tau = {tau_g}"),
    );

    let rev = reversibility_report(g, config.cap)?;
    report.check(
        "reversibility_criterion",
        rev.criteria_agree(),
        format!(
            "z criterion says {}, direct comparison says {}",
            if rev.is_reversible { "reversible" } else { "not reversible" },
            if rev.direct_symmetric { "symmetric" } else { "asymmetric" }
        ),
    );

    let mut bridges = 0;
    let mut cut_ok = true;
    for (u, v) in g.edges() {
        if g.is_bridge(u, v) {
            bridges += 1;
            for (a, b) in [(u, v), (v, u)] {
                cut_ok &= hit_cut_edge(g, a, b)? == hits[a][b];
            }
        }
    }
    report.check("cut_edge_identity", cut_ok, format!("{bridges} bridges checked in both directions"));

    if g.m() + 1 == n {
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                ok &= BigRational::from_integer(hit_tree_closed(g, a, b)?) == hits[a][b];
            }
        }
        report.check("tree_closed_form", ok, "all ordered pairs");
    }
    if let Ok(desc) = UnicycleDescriptor::new(g) {
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                ok &= hit_unicycle_closed(&desc, a, b)? == hits[a][b];
            }
        }
        report.check("unicycle_closed_form", ok, "all ordered pairs");
    }
    if let Some(Family::Lollipop { m, n: tail }) = loaded.family {
        if m == tail && m >= 2 {
            let closed = BigRational::from_integer(hit_lollipop_closed(m)?);
            let ok = closed == hits[0][2 * m - 1];
            report.check("lollipop_closed_form", ok, format!("H(x_1, y_{m}) = {}", closed.numer()));
        }
    }

    report.agreement.exact_ok = mismatches.is_empty();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(29.0), "29");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_float(123456.789), "123456.789");
        assert_eq!(format_float(1e-9), "1e-9");
        assert_eq!(format_float(2.5e20), "2.5e20");
        assert_eq!(format_float(-4.0), "-4");
    }

    #[test]
    fn cap_resolution() {
        assert_eq!(resolve_cap(None, None).unwrap(), DEFAULT_PATH_CAP);
        assert_eq!(resolve_cap(None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_cap(Some(5), Some("9")).unwrap(), 5);
        assert!(resolve_cap(None, Some("lots")).is_err());
    }

    #[test]
    fn graph_input_forms() {
        let tri = parse_graph_input("3 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!((tri.n(), tri.m()), (3, 3));
        assert_eq!(parse_graph_input("lollipop:2,2").unwrap(), parse_graph_input("path:4").unwrap());
        assert_eq!(
            parse_graph_input("3 2\n0 1\n0 1").unwrap_err(),
            Error::DuplicateEdge {
                u: 0,
                v: 1,
                line: Some(3)
            }
        );
    }
}
