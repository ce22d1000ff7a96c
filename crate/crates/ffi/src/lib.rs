//! C ABI for the `jacobson` crate.
//!
//! Rings and graphs are opaque handles owned by the caller and released with
//! the matching `*_free` function. Every fallible call returns a
//! [`JlabStatus`]; the message of the most recent failure on the calling
//! thread is available from [`jlab_last_error`]. Strings handed out by this
//! library are NUL-terminated and released with [`jlab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jacobson::constructions;
use jacobson::jgraph::{ExportFormat, DEFAULT_VERTEX_LIMIT};
use jacobson::oracles::SearchBudget;
use jacobson::{survey, theorems, Error, JacobsonGraph, ProductRing};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JlabStatus {
    Ok = 0,
    Parse = 2,
    Infeasible = 4,
    SizeLimit = 5,
    NullArgument = 10,
    InvalidUtf8 = 11,
    InvalidArgument = 12,
    Internal = 99,
}

/// A finite commutative ring given as a product of local rings.
pub struct JlabRing(ProductRing);

/// The Jacobson graph of a ring, with vertices numbered `0..vertex_count`.
pub struct JlabGraph(JacobsonGraph);

/// Graph serialisation formats.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JlabExportFormat {
    Dot = 0,
    Edges = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: JlabStatus,
    message: String,
}

impl Failure {
    fn new(status: JlabStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::NotPrime(_) | Error::NotPrimePower(_) | Error::TrivialRing | Error::EmptyProduct => {
                JlabStatus::Parse
            }
            Error::VertexLimit { .. } | Error::TooLarge(_) => JlabStatus::SizeLimit,
            Error::Infeasible(_) => JlabStatus::Infeasible,
            _ => JlabStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> JlabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => JlabStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(_) => {
            set_last_error("internal panic");
            JlabStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(JlabStatus::NullArgument, "null pointer argument"))
}

unsafe fn out_slot<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::new(JlabStatus::NullArgument, "null output pointer"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(JlabStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::new(JlabStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(JlabStatus::Internal, "output contains a NUL byte"))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure::new(JlabStatus::Internal, e.to_string()))?;
    to_c_string(text)
}

fn vertex_id(graph: &JlabGraph, id: usize) -> Result<usize, Failure> {
    if id < graph.0.vertex_count() {
        Ok(id)
    } else {
        Err(Failure::new(JlabStatus::InvalidArgument, format!("vertex {id} out of range")))
    }
}

/// Message of the most recent failure on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jlab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a ring specification such as `"Z4 x GF(9)"`.
///
/// # Safety
///
/// `spec` must be null or a NUL-terminated string; `out` must be null or
/// valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_ring_parse(spec: *const c_char, out: *mut *mut JlabRing) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let ring = jacobson::parse(read_str(spec)?)?;
        *slot = Box::into_raw(Box::new(JlabRing(ring)));
        Ok(())
    })
}

/// Releases a ring. Null is ignored.
///
/// # Safety
///
/// `ring` must be null or a handle from [`jlab_ring_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jlab_ring_free(ring: *mut JlabRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Canonical text of a ring; release with [`jlab_string_free`].
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` must be null or valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_ring_format(ring: *const JlabRing, out: *mut *mut c_char) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        *slot = to_c_string(jacobson::format(&borrow(ring)?.0))?;
        Ok(())
    })
}

/// Order of the ring.
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_ring_order(ring: *const JlabRing, out: *mut u64) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        *slot = borrow(ring)?.0.size();
        Ok(())
    })
}

/// Closed-form classification as a JSON object.
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` must be null or valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_classify(ring: *const JlabRing, out: *mut *mut c_char) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        *slot = to_json(&theorems::classify(&borrow(ring)?.0))?;
        Ok(())
    })
}

/// Closed forms checked against the exact oracles, as a JSON report.
/// `discrepancy` receives 1 when any flag is set and 0 otherwise.
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` and `discrepancy` must
/// be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn jlab_verify(
    ring: *const JlabRing,
    oracle_vertex_limit: usize,
    time_limit_ms: u64,
    out: *mut *mut c_char,
    discrepancy: *mut i32,
) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let flag = out_slot(discrepancy)?;
        let budget = SearchBudget { vertex_limit: oracle_vertex_limit, time_limit_ms };
        let report = survey::verify(&borrow(ring)?.0, &budget);
        *slot = to_json(&report)?;
        *flag = i32::from(report.has_discrepancy());
        Ok(())
    })
}

/// A validated Hamiltonian cycle, or path where only a path exists, as a JSON
/// construction trace.
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` must be null or valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_construct_hamiltonian(ring: *const JlabRing, out: *mut *mut c_char) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let ring = &borrow(ring)?.0;
        let trace = constructions::construct_hamiltonian(ring)?;
        constructions::check_elements(ring, &trace.walk, true)?;
        *slot = to_json(&trace)?;
        Ok(())
    })
}

/// Builds the Jacobson graph, refusing rings with more than `max_vertices`
/// vertices. Zero selects the default limit.
///
/// # Safety
///
/// `ring` must be null or a live ring handle; `out` must be null or valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_build(
    ring: *const JlabRing,
    max_vertices: u64,
    out: *mut *mut JlabGraph,
) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let limit = if max_vertices == 0 { DEFAULT_VERTEX_LIMIT } else { max_vertices };
        let g = JacobsonGraph::build_with_limit(&borrow(ring)?.0, limit)?;
        *slot = Box::into_raw(Box::new(JlabGraph(g)));
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
///
/// `graph` must be null or a handle from [`jlab_graph_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_free(graph: *mut JlabGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `out` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_vertex_count(graph: *const JlabGraph, out: *mut usize) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        *slot = borrow(graph)?.0.vertex_count();
        Ok(())
    })
}

/// Number of edges, counted directly.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `out` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_edge_count(graph: *const JlabGraph, out: *mut usize) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        *slot = borrow(graph)?.0.edge_count_oracle();
        Ok(())
    })
}

/// Degree of vertex `u`.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `out` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_degree(graph: *const JlabGraph, u: usize, out: *mut usize) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let g = borrow(graph)?;
        *slot = g.0.degree_oracle(vertex_id(g, u)?);
        Ok(())
    })
}

/// Writes 1 to `out` when vertices `u` and `v` are adjacent and 0 otherwise.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `out` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_adjacent(graph: *const JlabGraph, u: usize, v: usize, out: *mut i32) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let g = borrow(graph)?;
        *slot = i32::from(g.0.has_edge(vertex_id(g, u)?, vertex_id(g, v)?));
        Ok(())
    })
}

/// Copies the coordinates of vertex `u`, one per factor, into `coords`.
/// `len` receives the number of factors; nothing is copied when `capacity`
/// is smaller than that, and the call reports an invalid argument.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `coords` must be null or
/// valid for `capacity` writes; `len` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_vertex(
    graph: *const JlabGraph,
    u: usize,
    coords: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> JlabStatus {
    guard(|| {
        let n_slot = out_slot(len)?;
        let g = borrow(graph)?;
        let x = g.0.vertex(vertex_id(g, u)?).coords();
        *n_slot = x.len();
        if coords.is_null() {
            return Err(Failure::new(JlabStatus::NullArgument, "null coordinate buffer"));
        }
        if capacity < x.len() {
            return Err(Failure::new(JlabStatus::InvalidArgument, format!("buffer holds {capacity} of {} coordinates", x.len())));
        }
        std::slice::from_raw_parts_mut(coords, x.len()).copy_from_slice(x);
        Ok(())
    })
}

/// The graph as DOT or as an edge list; `format` is a [`JlabExportFormat`]
/// value.
///
/// # Safety
///
/// `graph` must be null or a live graph handle; `out` must be null or valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn jlab_graph_export(
    graph: *const JlabGraph,
    format: u32,
    out: *mut *mut c_char,
) -> JlabStatus {
    guard(|| {
        let slot = out_slot(out)?;
        let format = match format {
            f if f == JlabExportFormat::Dot as u32 => ExportFormat::Dot,
            f if f == JlabExportFormat::Edges as u32 => ExportFormat::Edges,
            f => return Err(Failure::new(JlabStatus::InvalidArgument, format!("unknown export format {f}"))),
        };
        *slot = to_c_string(borrow(graph)?.0.export(format))?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
///
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
