//! C interface to `alphadim`.
//!
//! Every fallible call returns an [`AdStatus`]; on failure a message is kept
//! per thread and read with [`ad_last_error`]. Graphs and embeddings live
//! behind opaque handles released by their `_free` functions. Strings
//! returned to the caller are released with [`ad_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alphadim::bounds::{self, ReportOptions};
use alphadim::construct::{Construction, EmbeddingResult};
use alphadim::graph::{gen_gnp, read_edge_list};
use alphadim::metric::doubling_dimension;
use alphadim::partition::clique_cover;
use alphadim::{Error, Graph, Limits, Mode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    SizeLimit = 4,
    Disconnected = 5,
    Numeric = 6,
    Io = 7,
    Panic = 8,
}

pub struct AdGraph(Graph);

pub struct AdEmbedding(EmbeddingResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AdStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => AdStatus::Parse,
        Error::SizeLimit { .. } | Error::SearchBudget(_) => AdStatus::SizeLimit,
        Error::Disconnected => AdStatus::Disconnected,
        Error::NotPsd(_) | Error::RetriesExhausted { .. } | Error::SampleBudget { .. } | Error::Degenerate(_) => {
            AdStatus::Numeric
        }
        Error::Io(_) => AdStatus::Io,
        _ => AdStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), AdStatus>) -> AdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside alphadim");
            AdStatus::Panic
        }
    }
}

fn fail(e: Error) -> AdStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> AdStatus {
    set_error(&format!("{what} is null"));
    AdStatus::NullPointer
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, AdStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        AdStatus::InvalidArgument
    })
}

unsafe fn graph<'a>(g: *const AdGraph) -> Result<&'a Graph, AdStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn embedding<'a>(e: *const AdEmbedding) -> Result<&'a EmbeddingResult, AdStatus> {
    e.as_ref().map(|e| &e.0).ok_or_else(|| null("embedding"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), AdStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn mode(exact: bool) -> Mode {
    if exact {
        Mode::Exact
    } else {
        Mode::Greedy
    }
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Edgeless graph on `n` vertices.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_new(n: usize, out: *mut *mut AdGraph) -> AdStatus {
    guard(|| put(out, Box::into_raw(Box::new(AdGraph(Graph::empty(n))))))
}

/// # Safety
/// `edge_list` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_parse(edge_list: *const c_char, out: *mut *mut AdGraph) -> AdStatus {
    guard(|| {
        let g = read_edge_list(text(edge_list, "edge list")?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AdGraph(g))))
    })
}

/// Erdős–Rényi sample.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_gnp(n: usize, p: f64, seed: u64, out: *mut *mut AdGraph) -> AdStatus {
    guard(|| {
        let g = gen_gnp(n, p, seed).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AdGraph(g))))
    })
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_add_edge(g: *mut AdGraph, u: usize, v: usize) -> AdStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.0.add_edge(u, v).map_err(fail)
    })
}

/// Vertex count; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_vertex_count(g: *const AdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ad_graph_free(g: *mut AdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Size of a minimum (`exact`) or greedy clique partition.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_clique_partition_size(g: *const AdGraph, exact: bool, out: *mut usize) -> AdStatus {
    guard(|| {
        let p = clique_cover(graph(g)?, mode(exact), &Limits::default()).map_err(fail)?;
        put(out, p.len())
    })
}

/// Build an embedding. `construction` is one of `spm`, `collapse`, `prop6`,
/// `frechet`, `frechet-q`, `schoenberg`, `simplex-jl`.
///
/// # Safety
/// `g` must be a live graph handle, `construction` a NUL-terminated string
/// and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_embed(
    g: *const AdGraph,
    construction: *const c_char,
    alpha: f64,
    seed: u64,
    out: *mut *mut AdEmbedding,
) -> AdStatus {
    guard(|| {
        let g = graph(g)?;
        let c: Construction = text(construction, "construction")?.parse().map_err(fail)?;
        let e = c.build(g, alpha, seed, &Limits::default()).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AdEmbedding(e))))
    })
}

/// Check α-preservation of `g` by `e`; `pass` and `alpha_max` may be null.
///
/// # Safety
/// Handles must be live; non-null output pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_embedding_check(
    e: *const AdEmbedding,
    g: *const AdGraph,
    alpha: f64,
    pass: *mut bool,
    alpha_max: *mut f64,
) -> AdStatus {
    guard(|| {
        let cert = embedding(e)?.check(graph(g)?, alpha).map_err(fail)?;
        if !pass.is_null() {
            *pass = cert.pass;
        }
        if !alpha_max.is_null() {
            *alpha_max = cert.alpha_max;
        }
        Ok(())
    })
}

/// Doubling dimension of the embedded point set or metric.
///
/// # Safety
/// `e` must be a live embedding handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_embedding_doubling(e: *const AdEmbedding, exact: bool, out: *mut u32) -> AdStatus {
    guard(|| {
        let d = doubling_dimension(&embedding(e)?.target, mode(exact), &Limits::default()).map_err(fail)?;
        put(out, d)
    })
}

/// JSON form of the embedding; free with [`ad_string_free`].
///
/// # Safety
/// `e` must be a live embedding handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_embedding_to_json(e: *const AdEmbedding, out: *mut *mut c_char) -> AdStatus {
    guard(|| put(out, to_c(embedding(e)?.to_json().map_err(fail)?)))
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ad_embedding_free(e: *mut AdEmbedding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Bound report at α as JSON; free with [`ad_string_free`].
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ad_analyze(g: *const AdGraph, alpha: f64, seed: u64, out: *mut *mut c_char) -> AdStatus {
    guard(|| {
        let opts = ReportOptions { seed, ..Default::default() };
        let rep = bounds::report(graph(g)?, alpha, &opts).map_err(fail)?;
        put(out, to_c(rep.to_json().map_err(fail)?))
    })
}
