//! C ABI over the `girth` library.
//!
//! Graphs and result vectors are opaque heap handles released with their
//! `_free` function. Every fallible call returns a `GIRTH_*` status code and
//! writes its output through a pointer argument; infinite distances are
//! reported as [`GIRTH_INF`].

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use girth::ansc::AnscAlgorithm;
use girth::cli::{exact_for, run_ansc, run_npsp, Queries};
use girth::npsp::{NpspAlgorithm, PairQuerySet, StInstance, PAIR_FACTOR};
use girth::{Dist, Error, Graph};

pub const GIRTH_OK: i32 = 0;
pub const GIRTH_NULL_POINTER: i32 = 1;
pub const GIRTH_INVALID_ARGUMENT: i32 = 2;
pub const GIRTH_PARSE_ERROR: i32 = 3;
pub const GIRTH_VERTEX_OUT_OF_RANGE: i32 = 4;
pub const GIRTH_UNSUPPORTED_GRAPH: i32 = 5;
pub const GIRTH_BOUND_VIOLATION: i32 = 6;
pub const GIRTH_IO_ERROR: i32 = 7;
pub const GIRTH_PANIC: i32 = 8;

/// Stands in for an infinite distance or a missing cycle.
pub const GIRTH_INF: u64 = u64::MAX;

/// Immutable weighted graph.
pub struct GirthGraph(Graph);

/// One value per vertex or per query pair.
pub struct GirthEstimates {
    values: Vec<u64>,
    scanned: u64,
}

fn code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => GIRTH_PARSE_ERROR,
        Error::VertexOutOfRange { .. } => GIRTH_VERTEX_OUT_OF_RANGE,
        Error::DirectedInput | Error::UndirectedInput | Error::WeightedInput { .. } => GIRTH_UNSUPPORTED_GRAPH,
        Error::BoundViolation(_) => GIRTH_BOUND_VIOLATION,
        Error::Io(_) | Error::Csv(_) => GIRTH_IO_ERROR,
        _ => GIRTH_INVALID_ARGUMENT,
    }
}

fn encode(d: Dist) -> u64 {
    d.finite().unwrap_or(GIRTH_INF)
}

fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GIRTH_OK,
        Ok(Err(c)) => c,
        Err(_) => GIRTH_PANIC,
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, i32> {
    if s.is_null() {
        return Err(GIRTH_NULL_POINTER);
    }
    CStr::from_ptr(s).to_str().map_err(|_| GIRTH_INVALID_ARGUMENT)
}

unsafe fn array<'a, T>(p: *const T, len: usize) -> Result<&'a [T], i32> {
    match (p.is_null(), len) {
        (_, 0) => Ok(&[]),
        (true, _) => Err(GIRTH_NULL_POINTER),
        (false, _) => Ok(slice::from_raw_parts(p, len)),
    }
}

unsafe fn graph_ref<'a>(g: *const GirthGraph) -> Result<&'a Graph, i32> {
    g.as_ref().map(|g| &g.0).ok_or(GIRTH_NULL_POINTER)
}

unsafe fn emit(out: *mut *mut GirthEstimates, values: Vec<Dist>, scanned: u64) {
    let h = GirthEstimates { values: values.into_iter().map(encode).collect(), scanned };
    *out = Box::into_raw(Box::new(h));
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn girth_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        GIRTH_OK => c"ok",
        GIRTH_NULL_POINTER => c"null pointer argument",
        GIRTH_INVALID_ARGUMENT => c"invalid argument",
        GIRTH_PARSE_ERROR => c"malformed input",
        GIRTH_VERTEX_OUT_OF_RANGE => c"vertex out of range",
        GIRTH_UNSUPPORTED_GRAPH => c"graph kind not supported by this algorithm",
        GIRTH_BOUND_VIOLATION => c"approximation bound violated",
        GIRTH_IO_ERROR => c"i/o error",
        GIRTH_PANIC => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Builds a graph from `m` edges `(us[i], vs[i], ws[i])`.
///
/// # Safety
/// `us`, `vs` and `ws` must each point to `m` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn girth_graph_new(
    n: usize,
    directed: bool,
    us: *const usize,
    vs: *const usize,
    ws: *const u64,
    m: usize,
    out: *mut *mut GirthGraph,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(GIRTH_NULL_POINTER);
        }
        let (us, vs, ws) = (array(us, m)?, array(vs, m)?, array(ws, m)?);
        let edges: Vec<_> = (0..m).map(|i| (us[i], vs[i], ws[i])).collect();
        let g = Graph::new(n, directed, &edges).map_err(|e| code(&e))?;
        *out = Box::into_raw(Box::new(GirthGraph(g)));
        Ok(())
    })
}

/// Parses the edge-list text format.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn girth_graph_parse(source: *const c_char, out: *mut *mut GirthGraph) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(GIRTH_NULL_POINTER);
        }
        let g = Graph::parse_str(text(source)?).map_err(|e| code(&e))?;
        *out = Box::into_raw(Box::new(GirthGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn girth_graph_free(g: *mut GirthGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn girth_graph_vertex_count(g: *const GirthGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn girth_graph_edge_count(g: *const GirthGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Shortest-cycle estimate for every vertex with the algorithm named `algo`
/// (`"exact"`, `"2approx"`, `"k-approx"`, ...). With `check_bounds` set, the
/// exact oracle also runs and a violated guarantee yields
/// `GIRTH_BOUND_VIOLATION`.
///
/// # Safety
/// `g` must be a live graph handle, `algo` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn girth_ansc(
    g: *const GirthGraph,
    algo: *const c_char,
    k: usize,
    eps: f64,
    seed: u64,
    check_bounds: bool,
    out: *mut *mut GirthEstimates,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(GIRTH_NULL_POINTER);
        }
        let g = graph_ref(g)?;
        let algo: AnscAlgorithm = text(algo)?.parse().map_err(|e| code(&e))?;
        let mut r = run_ansc(algo, g, k, eps, seed).map_err(|e| code(&e))?;
        if check_bounds {
            let exact = exact_for(g).map_err(|e| code(&e))?;
            r = r.with_exact(exact.estimates).map_err(|e| code(&e))?;
            r.assert_bounds().map_err(|e| code(&e))?;
        }
        emit(out, r.estimates, r.scanned);
        Ok(())
    })
}

/// Distance estimates for `count` pairs `(sources[i], targets[i])` with the
/// algorithm named `algo` (`"npsp-exact"`, `"tz"`, `"spanner-tz"`,
/// `"npsp-2eps"`). For `"st"` the two arrays are read as the source set and
/// the target set, and the output lists every pair of `S × T` row by row.
///
/// # Safety
/// `sources` and `targets` must each point to `count` readable values; other
/// pointers as for [`girth_ansc`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn girth_npsp(
    g: *const GirthGraph,
    algo: *const c_char,
    sources: *const usize,
    targets: *const usize,
    count: usize,
    k: usize,
    eps: f64,
    seed: u64,
    check_bounds: bool,
    out: *mut *mut GirthEstimates,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(GIRTH_NULL_POINTER);
        }
        let g = graph_ref(g)?;
        let algo: NpspAlgorithm = text(algo)?.parse().map_err(|e| code(&e))?;
        let (s, t) = (array(sources, count)?, array(targets, count)?);
        let q = if algo == NpspAlgorithm::SetToSet {
            Queries::SetToSet(StInstance::new(g.n(), s.to_vec(), t.to_vec()).map_err(|e| code(&e))?)
        } else {
            let pairs = s.iter().copied().zip(t.iter().copied()).collect();
            let factor = count.div_ceil(g.n().max(1)).max(PAIR_FACTOR);
            Queries::Pairs(PairQuerySet::with_limit(g.n(), pairs, factor).map_err(|e| code(&e))?)
        };
        let mut r = run_npsp(algo, g, &q, k, eps, seed).map_err(|e| code(&e))?;
        if check_bounds {
            let exact = girth::npsp::exact_npsp(g, &r.queries).map_err(|e| code(&e))?;
            r = r.with_exact(exact.estimates).map_err(|e| code(&e))?;
            r.assert_bounds().map_err(|e| code(&e))?;
        }
        emit(out, r.estimates, r.work);
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a live estimates handle.
#[no_mangle]
pub unsafe extern "C" fn girth_estimates_len(e: *const GirthEstimates) -> usize {
    e.as_ref().map_or(0, |e| e.values.len())
}

/// Work counter of the run that produced `e`: arcs scanned plus, for
/// oracle queries, bunch entries compared.
///
/// # Safety
/// `e` must be null or a live estimates handle.
#[no_mangle]
pub unsafe extern "C" fn girth_estimates_work(e: *const GirthEstimates) -> u64 {
    e.as_ref().map_or(0, |e| e.scanned)
}

/// Copies up to `len` values into `buf`; `GIRTH_INF` marks infinity.
///
/// # Safety
/// `e` must be a live estimates handle and `buf` writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn girth_estimates_copy(e: *const GirthEstimates, buf: *mut u64, len: usize) -> i32 {
    guard(|| {
        let e = e.as_ref().ok_or(GIRTH_NULL_POINTER)?;
        if buf.is_null() && len > 0 {
            return Err(GIRTH_NULL_POINTER);
        }
        let n = len.min(e.values.len());
        ptr::copy_nonoverlapping(e.values.as_ptr(), buf, n);
        Ok(())
    })
}

/// # Safety
/// `e` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn girth_estimates_free(e: *mut GirthEstimates) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}
