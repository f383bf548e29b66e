//! C interface to `misenum`.
//!
//! Graphs and structures are opaque handles created by `*_new`/`*_from_*`
//! functions and released by the matching `*_free`. Every fallible function
//! returns a [`MisStatus`]; results are written through out-pointers. A
//! structure handle does not borrow its graph, so the graph may be freed
//! first.

use std::ffi::{c_char, c_void, CStr};
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};

use misenum::cli::{resolve_algorithm, run_algorithm, Algorithm, CliError, RunOptions};
use misenum::dominance::{
    DomError, DominanceTester, IndependenceCounter, MinorConfig, MinorDomStructure,
    SparseDomStructure,
};
use misenum::graph::{
    degeneracy_ordering, orient_by_ordering, parse_edge_list, Graph, InputFormat, VertexOrdering,
};
use misenum::oracle::BRUTE_MAX_VERTICES;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    AlreadyMember = 4,
    NotMember = 5,
    TooLarge = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisFormat {
    EdgeList = 0,
    Dimacs = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisAlgorithm {
    Auto = 0,
    GenericMinor = 1,
    GenericSparse = 2,
    Bounded = 3,
    Brute = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisOrder {
    Degeneracy = 0,
    Input = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisStructure {
    Minor = 0,
    Sparse = 1,
}

/// Receives one maximal independent set as an ascending vertex array that
/// is only valid during the call. A nonzero return stops the enumeration.
pub type MisSetCallback =
    Option<unsafe extern "C" fn(members: *const u32, len: usize, user_data: *mut c_void) -> i32>;

/// An undirected simple graph.
pub struct MisGraph {
    graph: Graph,
}

/// A dynamic set with an undominated-vertex count.
pub struct MisDominance {
    tester: Box<dyn DominanceTester>,
}

/// A dynamic set with an independence test.
pub struct MisIndependence {
    counter: IndependenceCounter,
}

fn guard(f: impl FnOnce() -> MisStatus) -> MisStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(MisStatus::Internal)
}

fn dom_status(e: DomError) -> MisStatus {
    match e {
        DomError::AlreadyMember(_) => MisStatus::AlreadyMember,
        DomError::NotMember(_) => MisStatus::NotMember,
        DomError::OutOfRange { .. } => MisStatus::InvalidArgument,
    }
}

fn cli_status(e: CliError) -> MisStatus {
    match e {
        CliError::Usage(_) => MisStatus::InvalidArgument,
        CliError::Parse(_) => MisStatus::Parse,
        CliError::Mismatch(_) | CliError::Internal(_) | CliError::Io(_) => MisStatus::Internal,
    }
}

fn status_of(r: Result<(), MisStatus>) -> MisStatus {
    r.err().unwrap_or(MisStatus::Ok)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Static description of `status`.
#[no_mangle]
pub extern "C" fn mis_status_str(status: MisStatus) -> *const c_char {
    let s: &'static CStr = match status {
        MisStatus::Ok => c"ok",
        MisStatus::NullPointer => c"null pointer argument",
        MisStatus::InvalidArgument => c"invalid argument",
        MisStatus::Parse => c"malformed graph text",
        MisStatus::AlreadyMember => c"vertex already in the set",
        MisStatus::NotMember => c"vertex not in the set",
        MisStatus::TooLarge => c"input too large for this operation",
        MisStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries). Duplicates are merged.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `u32`s (or be null when
/// `edge_count == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut MisGraph,
) -> MisStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return MisStatus::NullPointer;
        }
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        match Graph::from_edges(n, pairs) {
            Ok(graph) => {
                write_out(out, MisGraph { graph });
                MisStatus::Ok
            }
            Err(_) => MisStatus::InvalidArgument,
        }
    })
}

/// Parses a NUL-terminated edge-list or DIMACS text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_parse(
    text: *const c_char,
    format: MisFormat,
    out: *mut *mut MisGraph,
) -> MisStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return MisStatus::NullPointer;
        }
        let format = match format {
            MisFormat::EdgeList => InputFormat::EdgeList,
            MisFormat::Dimacs => InputFormat::Dimacs,
        };
        match parse_edge_list(CStr::from_ptr(text).to_bytes(), format) {
            Ok(graph) => {
                write_out(out, MisGraph { graph });
                MisStatus::Ok
            }
            Err(_) => MisStatus::Parse,
        }
    })
}

/// # Safety
/// `graph` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_free(graph: *mut MisGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_vertex_count(graph: *const MisGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_edge_count(graph: *const MisGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Degeneracy of the graph, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_graph_degeneracy(graph: *const MisGraph) -> usize {
    graph
        .as_ref()
        .map_or(0, |g| degeneracy_ordering(&g.graph).1)
}

/// Enumerates every maximal independent set of `graph`, calling `callback`
/// (which may be null) for each. `delta` of 0 selects the default
/// threshold. The number of sets passed on is stored in `count` if it is
/// not null.
///
/// # Safety
/// `graph` must be a live handle; `count` must be null or writable;
/// `callback` must be safe to call with `user_data`.
#[no_mangle]
pub unsafe extern "C" fn mis_enumerate(
    graph: *const MisGraph,
    algorithm: MisAlgorithm,
    order: MisOrder,
    delta: usize,
    callback: MisSetCallback,
    user_data: *mut c_void,
    count: *mut u64,
) -> MisStatus {
    guard(|| {
        let Some(handle) = graph.as_ref() else {
            return MisStatus::NullPointer;
        };
        let g = &handle.graph;
        let (degeneracy_order, degeneracy) = degeneracy_ordering(g);
        let o = match order {
            MisOrder::Degeneracy => degeneracy_order,
            MisOrder::Input => VertexOrdering::identity(g.vertex_count()),
        };
        let options = RunOptions {
            delta: (delta > 0).then_some(delta),
            ..RunOptions::default()
        };
        let requested = match algorithm {
            MisAlgorithm::Auto => Algorithm::Auto,
            MisAlgorithm::GenericMinor => Algorithm::GenericMinor,
            MisAlgorithm::GenericSparse => Algorithm::GenericSparse,
            MisAlgorithm::Bounded => Algorithm::Bounded,
            MisAlgorithm::Brute => Algorithm::Brute,
        };
        let algorithm = resolve_algorithm(g, requested, options.max_degree, degeneracy);
        if algorithm == Algorithm::Brute && g.vertex_count() > BRUTE_MAX_VERTICES {
            return MisStatus::TooLarge;
        }
        let mut buffer: Vec<u32> = Vec::new();
        let mut visit = |s: &misenum::set::VertexSet| {
            let Some(cb) = callback else {
                return ControlFlow::Continue(());
            };
            buffer.clear();
            buffer.extend(s.iter().map(|v| v as u32));
            if cb(buffer.as_ptr(), buffer.len(), user_data) != 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        match run_algorithm(g, &o, algorithm, options, &mut visit) {
            Ok(stats) => {
                if !count.is_null() {
                    *count = stats.sets_emitted;
                }
                MisStatus::Ok
            }
            Err(e) => cli_status(e),
        }
    })
}

/// Creates an empty dominance structure over `graph`. `delta` of 0 selects
/// the default threshold; the minor structure needs `delta >= 2`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_dominance_new(
    graph: *const MisGraph,
    structure: MisStructure,
    delta: usize,
    out: *mut *mut MisDominance,
) -> MisStatus {
    guard(|| {
        let (Some(handle), false) = (graph.as_ref(), out.is_null()) else {
            return MisStatus::NullPointer;
        };
        let g = &handle.graph;
        let tester: Box<dyn DominanceTester> = match structure {
            MisStructure::Minor => {
                let delta = if delta == 0 {
                    MinorConfig::default().delta
                } else {
                    delta
                };
                if delta < 2 {
                    return MisStatus::InvalidArgument;
                }
                Box::new(MinorDomStructure::build(g, MinorConfig::with_delta(delta)))
            }
            MisStructure::Sparse => {
                let (order, _) = degeneracy_ordering(g);
                Box::new(SparseDomStructure::new(
                    g,
                    &orient_by_ordering(g, &order),
                    (delta > 0).then_some(delta),
                ))
            }
        };
        write_out(out, MisDominance { tester });
        MisStatus::Ok
    })
}

/// # Safety
/// `dom` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_dominance_insert(dom: *mut MisDominance, v: u32) -> MisStatus {
    guard(|| match dom.as_mut() {
        None => MisStatus::NullPointer,
        Some(d) => status_of(d.tester.insert(v as usize).map_err(dom_status)),
    })
}

/// # Safety
/// `dom` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_dominance_delete(dom: *mut MisDominance, v: u32) -> MisStatus {
    guard(|| match dom.as_mut() {
        None => MisStatus::NullPointer,
        Some(d) => status_of(d.tester.delete(v as usize).map_err(dom_status)),
    })
}

/// Stores the number of vertices neither in the set nor adjacent to it.
///
/// # Safety
/// `dom` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_dominance_undominated(
    dom: *const MisDominance,
    out: *mut usize,
) -> MisStatus {
    guard(|| match dom.as_ref() {
        Some(d) if !out.is_null() => {
            *out = d.tester.undominated_count();
            MisStatus::Ok
        }
        _ => MisStatus::NullPointer,
    })
}

/// # Safety
/// `dom` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_dominance_free(dom: *mut MisDominance) {
    if !dom.is_null() {
        drop(Box::from_raw(dom));
    }
}

/// Creates an empty independence tester over `graph`.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_independence_new(
    graph: *const MisGraph,
    out: *mut *mut MisIndependence,
) -> MisStatus {
    guard(|| {
        let (Some(handle), false) = (graph.as_ref(), out.is_null()) else {
            return MisStatus::NullPointer;
        };
        let g = &handle.graph;
        let (order, _) = degeneracy_ordering(g);
        write_out(
            out,
            MisIndependence {
                counter: IndependenceCounter::new(&orient_by_ordering(g, &order)),
            },
        );
        MisStatus::Ok
    })
}

/// # Safety
/// `ind` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_independence_insert(ind: *mut MisIndependence, v: u32) -> MisStatus {
    guard(|| match ind.as_mut() {
        None => MisStatus::NullPointer,
        Some(i) => status_of(i.counter.insert(v as usize).map_err(dom_status)),
    })
}

/// # Safety
/// `ind` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_independence_delete(ind: *mut MisIndependence, v: u32) -> MisStatus {
    guard(|| match ind.as_mut() {
        None => MisStatus::NullPointer,
        Some(i) => status_of(i.counter.delete(v as usize).map_err(dom_status)),
    })
}

/// Stores whether the current set is independent.
///
/// # Safety
/// `ind` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mis_independence_is_independent(
    ind: *const MisIndependence,
    out: *mut bool,
) -> MisStatus {
    guard(|| match ind.as_ref() {
        Some(i) if !out.is_null() => {
            *out = i.counter.is_independent();
            MisStatus::Ok
        }
        _ => MisStatus::NullPointer,
    })
}

/// # Safety
/// `ind` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mis_independence_free(ind: *mut MisIndependence) {
    if !ind.is_null() {
        drop(Box::from_raw(ind));
    }
}
