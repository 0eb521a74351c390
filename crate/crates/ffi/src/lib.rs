//! C ABI over `hitlab`.
//!
//! Conventions:
//! - every fallible call returns a [`HitlabStatus`] and writes its result
//!   through an out-pointer; on failure the out-pointer is left untouched and
//!   [`hitlab_last_error`] describes the problem;
//! - graphs are opaque [`HitlabGraph`] handles released with
//!   [`hitlab_graph_free`];
//! - strings returned to the caller are owned by the caller and released
//!   with [`hitlab_string_free`]. Exact values come back as `"num/den"`.
//!
//! The header `include/hitlab.h` is generated from this file by cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hitlab::cli::{run, Command, Format, InputSource, RunConfig, EXIT_CAP, EXIT_OK, EXIT_VERIFY_FAILED};
use hitlab::generators::{generate_family, Family};
use hitlab::graph::DEFAULT_PATH_CAP;
use hitlab::hitting::{hit_montecarlo, ExactMethod, FloatMethod, HittingEngine};
use hitlab::linalg::{format_rational, tau};
use hitlab::{Error, Graph};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitlabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad vertex index, method, parameter or non-UTF-8 string.
    InvalidArgument = 2,
    /// The edge list or family spec did not parse.
    Parse = 3,
    /// The graph is unsuitable, e.g. disconnected.
    Graph = 4,
    /// The graph is too large for the path-enumerating methods.
    SizeCapExceeded = 5,
    /// A numerical routine failed.
    Numeric = 6,
    /// `hitlab_verify_json` ran and at least one check failed.
    VerifyFailed = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitlabExactMethod {
    Oracle = 0,
    Spanning = 1,
    Rz = 2,
    Tetali = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitlabFloatMethod {
    Spectral = 0,
    Green = 1,
}

// Methods cross the boundary as plain integers: an out-of-range value in a
// Rust enum parameter would be undefined behaviour.
fn exact_method(raw: u32) -> Result<ExactMethod, (HitlabStatus, String)> {
    Ok(match raw {
        x if x == HitlabExactMethod::Oracle as u32 => ExactMethod::Oracle,
        x if x == HitlabExactMethod::Spanning as u32 => ExactMethod::Spanning,
        x if x == HitlabExactMethod::Rz as u32 => ExactMethod::Rz,
        x if x == HitlabExactMethod::Tetali as u32 => ExactMethod::Tetali,
        _ => return Err((HitlabStatus::InvalidArgument, format!("unknown exact method {raw}"))),
    })
}

fn float_method(raw: u32) -> Result<FloatMethod, (HitlabStatus, String)> {
    Ok(match raw {
        x if x == HitlabFloatMethod::Spectral as u32 => FloatMethod::Spectral,
        x if x == HitlabFloatMethod::Green as u32 => FloatMethod::Green,
        _ => return Err((HitlabStatus::InvalidArgument, format!("unknown float method {raw}"))),
    })
}

/// Opaque graph handle.
pub struct HitlabGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_for(err: &Error) -> HitlabStatus {
    match err {
        Error::Parse { .. }
        | Error::DuplicateEdge { .. }
        | Error::LoopEdge { .. }
        | Error::Io(_) => HitlabStatus::Parse,
        Error::VertexOutOfRange { line: Some(_), .. } => HitlabStatus::Parse,
        Error::VertexOutOfRange { .. }
        | Error::InvalidParams(_)
        | Error::EmptySet
        | Error::WeightBelowDegree { .. } => HitlabStatus::InvalidArgument,
        Error::SizeCapExceeded { .. } => HitlabStatus::SizeCapExceeded,
        Error::NotSquare(..)
        | Error::SingularMatrix
        | Error::NotSymmetric(..)
        | Error::NoConvergence(_) => HitlabStatus::Numeric,
        Error::EmptyGraph
        | Error::Disconnected
        | Error::NotBridge(..)
        | Error::NotATree
        | Error::NotUnicyclic
        | Error::VertexNotInClaimedTrees { .. } => HitlabStatus::Graph,
    }
}

/// Runs `f`, recording any error or panic for [`hitlab_last_error`].
fn guard(f: impl FnOnce() -> Result<(), (HitlabStatus, String)>) -> HitlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HitlabStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal error: {msg}"));
            HitlabStatus::Panic
        }
    }
}

fn lib(err: Error) -> (HitlabStatus, String) {
    (status_for(&err), err.to_string())
}

fn null(what: &str) -> (HitlabStatus, String) {
    (HitlabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const HitlabGraph) -> Result<&'a Graph, (HitlabStatus, String)> {
    // SAFETY: caller passes a live handle from one of the constructors, or null.
    unsafe { g.as_ref() }.map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, (HitlabStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller guarantees a NUL-terminated string.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| (HitlabStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) {
    // SAFETY: checked non-null by the caller of this helper.
    unsafe { out.write(value) }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL in library output").into_raw()
}

unsafe fn write_graph(out: *mut *mut HitlabGraph, graph: Graph) {
    let handle = Box::into_raw(Box::new(HitlabGraph { graph }));
    unsafe { write_out(out, handle) }
}

/// Builds a graph on `n` vertices from `m` edges stored as `2 * m`
/// consecutive vertex indices.
///
/// # Safety
/// `edges` must point to `2 * m` readable `size_t` values (it may be null
/// when `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut HitlabGraph,
) -> HitlabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            // SAFETY: caller guarantees 2 * m readable values.
            unsafe { std::slice::from_raw_parts(edges, 2 * m) }
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edge_list(&pairs, n).map_err(lib)?;
        unsafe { write_graph(out, g) };
        Ok(())
    })
}

/// Builds a graph from a family spec such as `"lollipop:5,5"` or
/// `"random:n=8,seed=42"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_from_family(
    spec: *const c_char,
    out: *mut *mut HitlabGraph,
) -> HitlabStatus {
    guard(|| {
        let spec = unsafe { str_arg(spec, "spec") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let family: Family = spec.parse().map_err(|e| (HitlabStatus::Parse, format!("{e}")))?;
        let g = generate_family(&family).map_err(lib)?;
        unsafe { write_graph(out, g) };
        Ok(())
    })
}

/// Parses an edge list: a header line `n m`, then `m` lines `u v`; `#`
/// starts a comment.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_parse(text: *const c_char, out: *mut *mut HitlabGraph) -> HitlabStatus {
    guard(|| {
        let text = unsafe { str_arg(text, "text") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = Graph::parse_edge_list(text).map_err(lib)?;
        unsafe { write_graph(out, g) };
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_free(g: *mut HitlabGraph) {
    if !g.is_null() {
        // SAFETY: the handle came from Box::into_raw in a constructor.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_vertex_count(g: *const HitlabGraph) -> usize {
    unsafe { graph_ref(g) }.map_or(0, Graph::n)
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hitlab_graph_edge_count(g: *const HitlabGraph) -> usize {
    unsafe { graph_ref(g) }.map_or(0, Graph::m)
}

/// Exact `H(x, y)` as a `"num/den"` string. `method` is one of the
/// `HitlabExactMethod` values; `cap` bounds the vertex count for the
/// path-enumerating methods, 0 selecting the default.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_hit_exact(
    g: *const HitlabGraph,
    x: usize,
    y: usize,
    method: u32,
    cap: usize,
    out: *mut *mut c_char,
) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let method = exact_method(method)?;
        let cap = if cap == 0 { DEFAULT_PATH_CAP } else { cap };
        let h = HittingEngine::new(g, cap)
            .and_then(|mut e| e.exact(x, y, method))
            .map_err(lib)?;
        unsafe { write_out(out, to_c_string(format_rational(&h))) };
        Ok(())
    })
}

/// Floating-point `H(x, y)`; `method` is one of the `HitlabFloatMethod`
/// values.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_hit_float(
    g: *const HitlabGraph,
    x: usize,
    y: usize,
    method: u32,
    out: *mut f64,
) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let method = float_method(method)?;
        let h = HittingEngine::new(g, 0)
            .and_then(|mut e| e.float(x, y, method))
            .map_err(lib)?;
        unsafe { write_out(out, h) };
        Ok(())
    })
}

/// Number of spanning trees, as a decimal string.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_tau(g: *const HitlabGraph, out: *mut *mut c_char) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = tau(&g.to_multigraph()).map_err(lib)?;
        unsafe { write_out(out, to_c_string(t.to_string())) };
        Ok(())
    })
}

/// Effective resistance between `x` and `y` as `"num/den"`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_resistance(
    g: *const HitlabGraph,
    x: usize,
    y: usize,
    out: *mut *mut c_char,
) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = hitlab::hitting::resistance(g, x, y).map_err(lib)?;
        unsafe { write_out(out, to_c_string(format_rational(&r))) };
        Ok(())
    })
}

/// Commute time `H(x, y) + H(y, x)` as `"num/den"`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_commute(
    g: *const HitlabGraph,
    x: usize,
    y: usize,
    out: *mut *mut c_char,
) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let k = hitlab::hitting::commute(g, x, y).map_err(lib)?;
        unsafe { write_out(out, to_c_string(format_rational(&k))) };
        Ok(())
    })
}

/// Monte Carlo estimate of `H(x, y)` from `walks` seeded walks. Either
/// out-pointer may be null if that value is not wanted.
///
/// # Safety
/// `g` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_hit_montecarlo(
    g: *const HitlabGraph,
    x: usize,
    y: usize,
    walks: u64,
    seed: u64,
    out_mean: *mut f64,
    out_stderr: *mut f64,
) -> HitlabStatus {
    guard(|| {
        let g = unsafe { graph_ref(g) }?;
        let est = hit_montecarlo(g, x, y, walks, seed).map_err(lib)?;
        if !out_mean.is_null() {
            unsafe { write_out(out_mean, est.mean) };
        }
        if !out_stderr.is_null() {
            unsafe { write_out(out_stderr, est.stderr) };
        }
        Ok(())
    })
}

/// Runs the full verification sweep and returns the JSON report. The
/// report is written even when a check fails, in which case the status is
/// `HITLAB_STATUS_VERIFY_FAILED`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hitlab_verify_json(
    g: *const HitlabGraph,
    cap: usize,
    out: *mut *mut c_char,
) -> HitlabStatus {
    let mut failed = false;
    let status = guard(|| {
        let g = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mut config = RunConfig::new(Command::Verify, InputSource::Text(g.to_edge_list()));
        config.format = Format::Json;
        if cap != 0 {
            config.cap = cap;
        }
        let outcome = run(&config);
        match outcome.code {
            EXIT_OK | EXIT_VERIFY_FAILED => {
                failed = outcome.code == EXIT_VERIFY_FAILED;
                unsafe { write_out(out, to_c_string(outcome.stdout)) };
                Ok(())
            }
            EXIT_CAP => Err((HitlabStatus::SizeCapExceeded, outcome.stderr.trim().to_string())),
            _ => Err((HitlabStatus::Graph, outcome.stderr.trim().to_string())),
        }
    });
    if status == HitlabStatus::Ok && failed {
        set_last_error("verification failed; see the report".into());
        return HitlabStatus::VerifyFailed;
    }
    status
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hitlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hitlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hitlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
