//! C ABI over the `tridual` recognizers.
//!
//! Objects cross the boundary as opaque handles created by `td_*_parse` or
//! `td_recognize_*` and released with the matching `td_*_free`. Every
//! fallible call returns a [`TdStatus`]; on failure the message is kept per
//! thread and can be read with [`td_last_error_message`]. Strings returned
//! to the caller are owned by the caller and freed with [`td_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tridual::decision::{Decision, Verdict};
use tridual::embed::PlaneEmbedding;
use tridual::known_holes::{
    embed_dual, recognize_known_holes_with, HoleAssignment, KnownHolesOptions,
};
use tridual::no_holes::recognize_no_holes;
use tridual::sat::{exhaustive_assignment_search, GadgetGraph};
use tridual::{Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotPlanar = 5,
    CapExceeded = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdVerdict {
    YesWithoutInteriorPoints = 0,
    YesWithInteriorPoints = 1,
    No = 2,
}

/// Opaque graph handle.
pub struct TdGraph {
    graph: Graph,
    embedding: Option<PlaneEmbedding>,
}

/// Opaque recognition result.
pub struct TdDecision {
    decision: Decision,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: TdStatus, msg: impl Into<String>) -> TdStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> TdStatus {
    let status = match e {
        Error::Parse { .. } => TdStatus::Parse,
        Error::NonPlanar => TdStatus::NotPlanar,
        Error::CapExceeded { .. } => TdStatus::CapExceeded,
        Error::Io(_) => TdStatus::Internal,
        _ => TdStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TdStatus> {
    if p.is_null() {
        return Err(fail(TdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TdStatus::InvalidUtf8, "string is not UTF-8"))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn embedding_of(g: &TdGraph) -> Result<PlaneEmbedding, TdStatus> {
    match &g.embedding {
        Some(e) => Ok(e.clone()),
        None => embed_dual(&g.graph).map_err(|e| from_error(&e)),
    }
}

fn parse_graph(text: &str) -> Result<TdGraph, TdStatus> {
    match PlaneEmbedding::parse(text) {
        Ok(e) => Ok(TdGraph {
            graph: e.graph().clone(),
            embedding: Some(e),
        }),
        Err(_) => Graph::parse(text)
            .map(|graph| TdGraph {
                graph,
                embedding: None,
            })
            .map_err(|e| from_error(&e)),
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn td_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn td_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a graph in edge-list form, or an embedding with rotation lines.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_graph_parse(text: *const c_char, out: *mut *mut TdGraph) -> TdStatus {
    if out.is_null() {
        return fail(TdStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let handle = match parse_graph(text) {
        Ok(h) => h,
        Err(s) => return s,
    };
    *out = Box::into_raw(Box::new(handle));
    TdStatus::Ok
}

/// # Safety
/// `g` must come from [`td_graph_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_graph_free(g: *mut TdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn td_graph_vertex_count(g: *const TdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn td_graph_edge_count(g: *const TdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Recognition without holes. A "no" answer is a successful call.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_recognize_no_holes(
    g: *const TdGraph,
    require_empty_interior: bool,
    out: *mut *mut TdDecision,
) -> TdStatus {
    if out.is_null() {
        return fail(TdStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let Some(g) = g.as_ref() else {
        return fail(TdStatus::NullPointer, "null graph");
    };
    let decision = recognize_no_holes(&g.graph, require_empty_interior);
    *out = Box::into_raw(Box::new(TdDecision { decision }));
    TdStatus::Ok
}

/// Recognition with a hole assignment given as `vertex : v1 v2 ... vk`
/// lines against the graph's embedding.
///
/// # Safety
/// `g` must be a live handle, `assignment` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn td_recognize_known_holes(
    g: *const TdGraph,
    assignment: *const c_char,
    require_empty_interior: bool,
    out: *mut *mut TdDecision,
) -> TdStatus {
    if out.is_null() {
        return fail(TdStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let Some(g) = g.as_ref() else {
        return fail(TdStatus::NullPointer, "null graph");
    };
    let text = match read_str(assignment) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let emb = match embedding_of(g) {
        Ok(e) => e,
        Err(s) => return s,
    };
    let h = match HoleAssignment::parse(text, &emb) {
        Ok(h) => h,
        Err(e) => return from_error(&e),
    };
    let decision = recognize_known_holes_with(
        &emb,
        &h,
        KnownHolesOptions {
            require_empty_interior,
        },
    );
    *out = Box::into_raw(Box::new(TdDecision { decision }));
    TdStatus::Ok
}

/// Exhaustive search over hole assignments. Accepts gadget-graph files with
/// a `tags` section as well as plain graphs and embeddings. On success
/// `found` tells whether some assignment is accepted and `k` receives the
/// number of degree-2 vertices.
///
/// # Safety
/// `text` must be a NUL-terminated string; `found` and `k` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn td_solve_unknown_holes(
    text: *const c_char,
    cap: usize,
    found: *mut bool,
    k: *mut usize,
) -> TdStatus {
    if found.is_null() || k.is_null() {
        return fail(TdStatus::NullPointer, "null output pointer");
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let emb = match GadgetGraph::parse(text) {
        Ok(gg) => gg.gstar,
        Err(_) => match parse_graph(text).and_then(|g| embedding_of(&g)) {
            Ok(e) => e,
            Err(s) => return s,
        },
    };
    match exhaustive_assignment_search(&emb, cap) {
        Ok(r) => {
            *found = r.hit.is_some();
            *k = r.k;
            TdStatus::Ok
        }
        Err(e) => from_error(&e),
    }
}

/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_decision_verdict(d: *const TdDecision) -> TdVerdict {
    match d.as_ref().map(|d| d.decision.verdict()) {
        Some(Verdict::YesWithoutInteriorPoints) => TdVerdict::YesWithoutInteriorPoints,
        Some(Verdict::YesWithInteriorPoints) => TdVerdict::YesWithInteriorPoints,
        _ => TdVerdict::No,
    }
}

/// Reason for a "no" verdict, or null for "yes". Free with
/// [`td_string_free`].
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_decision_reason(d: *const TdDecision) -> *mut c_char {
    d.as_ref()
        .and_then(|d| d.decision.reason())
        .map_or(ptr::null_mut(), |r| owned(r.to_string()))
}

/// Witness triangulation in the text format, or null for "no". Free with
/// [`td_string_free`].
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn td_decision_witness(d: *const TdDecision) -> *mut c_char {
    d.as_ref()
        .and_then(|d| d.decision.witness())
        .map_or(ptr::null_mut(), |t| owned(t.to_text()))
}

/// # Safety
/// `d` must come from a `td_recognize_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn td_decision_free(d: *mut TdDecision) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn td_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
