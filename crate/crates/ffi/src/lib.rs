//! C ABI over `tempus-core`.
//!
//! Graphs and score tables are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`TempusStatus`]; on
//! failure [`tempus_last_error`] describes the problem for the calling
//! thread. Strings passed in must be NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use tempus_core::analytics::{classify_ranks, ClassifierConfig, FlowLabel};
use tempus_core::generator::{generate_synthetic, GeneratorConfig};
use tempus_core::io::{load_graph, save_graph};
use tempus_core::static_metrics::{rank, static_betweenness, CentralityVector};
use tempus_core::temporal::{foremost_betweenness, TemporalOptions};
use tempus_core::tvg::{
    ActorClass, ActorType, Lifetime, TemporalEdge, TemporalNode, TimeVaryingGraph, Window,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TempusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    Io = 4,
    RouteLimit = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TempusFlowLabel {
    Rapid = 0,
    Brook = 1,
    InvisibleRapid = 2,
    InvisibleBrook = 3,
    Neutral = 4,
}

impl From<FlowLabel> for TempusFlowLabel {
    fn from(l: FlowLabel) -> Self {
        match l {
            FlowLabel::Rapid => TempusFlowLabel::Rapid,
            FlowLabel::Brook => TempusFlowLabel::Brook,
            FlowLabel::InvisibleRapid => TempusFlowLabel::InvisibleRapid,
            FlowLabel::InvisibleBrook => TempusFlowLabel::InvisibleBrook,
            FlowLabel::Neutral => TempusFlowLabel::Neutral,
        }
    }
}

/// Accumulates nodes and edges until `tempus_builder_build`.
pub struct TempusBuilder {
    lifetime: Lifetime,
    nodes: Vec<TemporalNode>,
    edges: Vec<TemporalEdge>,
}

pub struct TempusGraph(TimeVaryingGraph);

/// Node scores ordered by rank.
pub struct TempusScores {
    rows: Vec<(CString, f64, usize)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: TempusStatus, msg: impl Into<String>) -> TempusStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `TempusStatus::Panic`.
fn guard(f: impl FnOnce() -> TempusStatus) -> TempusStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TempusStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TempusStatus> {
    if p.is_null() {
        return Err(fail(TempusStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            TempusStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

fn core_status(e: &tempus_core::Error) -> TempusStatus {
    use tempus_core::Error as E;
    if e.is_limit() {
        return TempusStatus::RouteLimit;
    }
    match e {
        E::Data(tempus_core::DataError::Io { .. }) => TempusStatus::Io,
        E::Data(tempus_core::DataError::Malformed { .. }) => TempusStatus::InvalidArgument,
        _ => TempusStatus::InvalidGraph,
    }
}

fn core_fail(e: impl Into<tempus_core::Error>) -> TempusStatus {
    let e = e.into();
    fail(core_status(&e), e.to_string())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn tempus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New builder for a graph with lifetime `[start, end]`; null if the
/// interval is empty.
#[no_mangle]
pub extern "C" fn tempus_builder_new(start: i64, end: i64) -> *mut TempusBuilder {
    match Lifetime::new(start, end) {
        Ok(lifetime) => Box::into_raw(Box::new(TempusBuilder {
            lifetime,
            nodes: Vec::new(),
            edges: Vec::new(),
        })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// `actor_type` is `HIA`, `NHIA`, `NHMA`, `OA` or `UNKNOWN`, optionally
/// followed by `:subtype`; null means `UNKNOWN`.
///
/// # Safety
/// `b` must come from `tempus_builder_new`; strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tempus_builder_add_node(
    b: *mut TempusBuilder,
    id: *const c_char,
    actor_type: *const c_char,
    birth: i64,
) -> TempusStatus {
    guard(|| {
        let Some(b) = b.as_mut() else {
            return fail(TempusStatus::NullPointer, "builder is null");
        };
        let id = match str_arg(id, "id") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let ty = if actor_type.is_null() {
            ActorType::unknown()
        } else {
            let raw = match str_arg(actor_type, "actor type") {
                Ok(s) => s,
                Err(s) => return s,
            };
            let (class, sub) = match raw.split_once(':') {
                Some((c, s)) => (c, Some(s)),
                None => (raw, None),
            };
            let Some(class) = ActorClass::parse(class) else {
                return fail(
                    TempusStatus::InvalidArgument,
                    format!("unknown actor type {raw:?}"),
                );
            };
            match sub {
                Some(s) => ActorType::with_subtype(class, s),
                None => ActorType::new(class),
            }
        };
        b.nodes.push(TemporalNode::new(id, ty, birth));
        TempusStatus::Ok
    })
}

/// # Safety
/// `b` must come from `tempus_builder_new`; strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tempus_builder_add_edge(
    b: *mut TempusBuilder,
    u: *const c_char,
    v: *const c_char,
    birth: i64,
) -> TempusStatus {
    guard(|| {
        let Some(b) = b.as_mut() else {
            return fail(TempusStatus::NullPointer, "builder is null");
        };
        let (u, v) = match (str_arg(u, "u"), str_arg(v, "v")) {
            (Ok(u), Ok(v)) => (u, v),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        b.edges.push(TemporalEdge::new(u, v, birth));
        TempusStatus::Ok
    })
}

/// Consumes the builder, even on failure. Edges may name nodes that were
/// never added; those nodes are created with the birth of their first edge.
///
/// # Safety
/// `b` must come from `tempus_builder_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tempus_builder_build(
    b: *mut TempusBuilder,
    out: *mut *mut TempusGraph,
) -> TempusStatus {
    guard(|| {
        if b.is_null() || out.is_null() {
            return fail(TempusStatus::NullPointer, "builder or output is null");
        }
        let b = Box::from_raw(b);
        match TimeVaryingGraph::build(b.nodes, b.edges, b.lifetime) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TempusGraph(g)));
                TempusStatus::Ok
            }
            Err(e) => core_fail(e),
        }
    })
}

/// # Safety
/// `b` must be null or come from `tempus_builder_new`.
#[no_mangle]
pub unsafe extern "C" fn tempus_builder_free(b: *mut TempusBuilder) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Loads CSV files; `nodes_path` may be null. The lifetime is inferred
/// from the data.
///
/// # Safety
/// Paths must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_load(
    nodes_path: *const c_char,
    edges_path: *const c_char,
    out: *mut *mut TempusGraph,
) -> TempusStatus {
    guard(|| {
        if out.is_null() {
            return fail(TempusStatus::NullPointer, "output is null");
        }
        let nodes = if nodes_path.is_null() {
            None
        } else {
            match str_arg(nodes_path, "nodes path") {
                Ok(s) => Some(Path::new(s)),
                Err(s) => return s,
            }
        };
        let edges = match str_arg(edges_path, "edges path") {
            Ok(s) => Path::new(s),
            Err(s) => return s,
        };
        match load_graph(nodes, edges, None) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TempusGraph(g)));
                TempusStatus::Ok
            }
            Err(e) => core_fail(e),
        }
    })
}

/// # Safety
/// `g` must be a live graph handle; paths must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_save(
    g: *const TempusGraph,
    nodes_path: *const c_char,
    edges_path: *const c_char,
) -> TempusStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(TempusStatus::NullPointer, "graph is null");
        };
        let (n, e) = match (
            str_arg(nodes_path, "nodes path"),
            str_arg(edges_path, "edges path"),
        ) {
            (Ok(n), Ok(e)) => (n, e),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match save_graph(&g.0, Path::new(n), Path::new(e)) {
            Ok(()) => TempusStatus::Ok,
            Err(e) => core_fail(e),
        }
    })
}

/// The default synthetic network for `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_generate(
    seed: u64,
    out: *mut *mut TempusGraph,
) -> TempusStatus {
    guard(|| {
        if out.is_null() {
            return fail(TempusStatus::NullPointer, "output is null");
        }
        match generate_synthetic(&GeneratorConfig::with_seed(seed)) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TempusGraph(g)));
                TempusStatus::Ok
            }
            Err(e) => core_fail(e),
        }
    })
}

/// Zero for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_node_count(g: *const TempusGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_edge_count(g: *const TempusGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be null or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tempus_graph_free(g: *mut TempusGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

fn into_scores(v: &CentralityVector) -> TempusScores {
    let ranks = rank(v);
    let mut rows: Vec<(CString, f64, usize)> = v
        .scores
        .iter()
        .map(|(id, &s)| (CString::new(id.as_str()).unwrap_or_default(), s, ranks[id]))
        .collect();
    rows.sort_by_key(|r| r.2);
    TempusScores { rows }
}

unsafe fn scores_for(
    g: *const TempusGraph,
    start: i64,
    end: i64,
    out: *mut *mut TempusScores,
    compute: impl FnOnce(&TimeVaryingGraph, Window) -> Result<CentralityVector, tempus_core::Error>,
) -> TempusStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return fail(TempusStatus::NullPointer, "graph is null");
        };
        if out.is_null() {
            return fail(TempusStatus::NullPointer, "output is null");
        }
        let w = match Window::new(start, end) {
            Ok(w) => w,
            Err(e) => return core_fail(e),
        };
        match compute(&g.0, w) {
            Ok(v) => {
                *out = Box::into_raw(Box::new(into_scores(&v)));
                TempusStatus::Ok
            }
            Err(e) => fail(core_status(&e), e.to_string()),
        }
    })
}

/// Static betweenness of the footprint of window `[start, end]`.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_static_betweenness(
    g: *const TempusGraph,
    start: i64,
    end: i64,
    adjusted: bool,
    out: *mut *mut TempusScores,
) -> TempusStatus {
    scores_for(g, start, end, out, |g, w| {
        Ok(static_betweenness(
            &g.restrict_window(w)?.footprint(),
            adjusted,
        ))
    })
}

/// Foremost increasing betweenness over window `[start, end]` with the
/// default route limit.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_foremost_betweenness(
    g: *const TempusGraph,
    start: i64,
    end: i64,
    adjusted: bool,
    out: *mut *mut TempusScores,
) -> TempusStatus {
    scores_for(g, start, end, out, |g, w| {
        let opts = TemporalOptions {
            adjusted,
            ..Default::default()
        };
        Ok(foremost_betweenness(g, w, &opts)?.scores)
    })
}

/// # Safety
/// `s` must be null or a live score handle.
#[no_mangle]
pub unsafe extern "C" fn tempus_scores_len(s: *const TempusScores) -> usize {
    s.as_ref().map_or(0, |s| s.rows.len())
}

/// Node id of row `i`, owned by the score table; null when out of range.
///
/// # Safety
/// `s` must be null or a live score handle.
#[no_mangle]
pub unsafe extern "C" fn tempus_scores_node(s: *const TempusScores, i: usize) -> *const c_char {
    s.as_ref()
        .and_then(|s| s.rows.get(i))
        .map_or(ptr::null(), |r| r.0.as_ptr())
}

/// Score and 1-based rank of row `i`. Either output may be null.
///
/// # Safety
/// `s` must be a live score handle; outputs must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_scores_get(
    s: *const TempusScores,
    i: usize,
    score: *mut f64,
    rank: *mut usize,
) -> TempusStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail(TempusStatus::NullPointer, "scores is null");
        };
        let Some(row) = s.rows.get(i) else {
            return fail(
                TempusStatus::OutOfRange,
                format!("row {i} of {}", s.rows.len()),
            );
        };
        if !score.is_null() {
            *score = row.1;
        }
        if !rank.is_null() {
            *rank = row.2;
        }
        TempusStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a score handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tempus_scores_free(s: *mut TempusScores) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Label for a temporal/static rank pair with thresholds `top < low`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tempus_classify(
    temporal_rank: usize,
    static_rank: usize,
    top: usize,
    low: usize,
    out: *mut TempusFlowLabel,
) -> TempusStatus {
    guard(|| {
        if out.is_null() {
            return fail(TempusStatus::NullPointer, "output is null");
        }
        match ClassifierConfig::new(top, low) {
            Ok(cfg) => {
                *out = classify_ranks(temporal_rank, static_rank, &cfg).into();
                TempusStatus::Ok
            }
            Err(e) => fail(TempusStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tempus_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
