//! C ABI over `netrobust-core`.
//!
//! Graphs are opaque `NrGraph` handles created by `nr_graph_*` constructors
//! and released with `nr_graph_free`. Every fallible call returns an
//! `NrStatus`; on failure `nr_last_error` describes the cause for the calling
//! thread. Output arrays are caller-allocated.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use netrobust_core::attack::{
    min_driver_nodes, simulate_attack, AttackMode, AttackSpec, CurveKind, Strategy,
};
use netrobust_core::graph::{read_edge_list, write_edge_list, DiGraph, GrayImage};
use netrobust_core::mask::{apply_mask, MaskKind, MaskSpec};
use netrobust_core::netgen::{generate, NetConfig, Topology};
use netrobust_core::stats::{mann_whitney, Alternative};
use netrobust_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    Io = 5,
    Parse = 6,
    SamplingStalled = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrTopology {
    ErdosRenyi = 0,
    QSnapback = 1,
    SmallWorld = 2,
    ScaleFree = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStrategy {
    Random = 0,
    Betweenness = 1,
    Degree = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrMode {
    Adaptive = 0,
    Static = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrCurveKind {
    Connectivity = 0,
    Controllability = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrMaskKind {
    Null = 0,
    Confusion = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrAlternative {
    /// Second sample stochastically greater than the first.
    Greater = 0,
    TwoSided = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NrMannWhitney {
    pub u_x: f64,
    pub u_y: f64,
    pub p_value: f64,
    pub exact: bool,
    pub degenerate: bool,
}

/// Opaque directed graph.
pub struct NrGraph {
    inner: DiGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: NrStatus, msg: impl Into<String>) -> NrStatus {
    set_last_error(msg.into());
    status
}

fn status_of(e: &Error) -> NrStatus {
    match e {
        Error::NodeOutOfRange { .. } => NrStatus::OutOfRange,
        Error::Io { .. } => NrStatus::Io,
        Error::Parse { .. } | Error::Json(_) => NrStatus::Parse,
        Error::SamplingStalled(_) => NrStatus::SamplingStalled,
        _ => NrStatus::InvalidArgument,
    }
}

fn from_core(e: Error) -> NrStatus {
    let status = status_of(&e);
    fail(status, e.to_string())
}

/// Runs `f` with panics converted to `NrStatus::Panic`.
fn guard<F: FnOnce() -> NrStatus>(f: F) -> NrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(NrStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

macro_rules! try_core {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_core(e),
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(NrStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

unsafe fn graph_ref<'a>(g: *const NrGraph) -> &'a DiGraph {
    &(*g).inner
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, NrStatus> {
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| fail(NrStatus::InvalidArgument, "path is not valid UTF-8"))
}

fn emit_graph(g: DiGraph, out: *mut *mut NrGraph) -> NrStatus {
    let boxed = Box::new(NrGraph { inner: g });
    unsafe { *out = Box::into_raw(boxed) };
    NrStatus::Ok
}

impl From<NrTopology> for Topology {
    fn from(t: NrTopology) -> Self {
        match t {
            NrTopology::ErdosRenyi => Topology::ErdosRenyi,
            NrTopology::QSnapback => Topology::QSnapback,
            NrTopology::SmallWorld => Topology::SmallWorld,
            NrTopology::ScaleFree => Topology::ScaleFree,
        }
    }
}

impl From<NrStrategy> for Strategy {
    fn from(s: NrStrategy) -> Self {
        match s {
            NrStrategy::Random => Strategy::Random,
            NrStrategy::Betweenness => Strategy::Betweenness,
            NrStrategy::Degree => Strategy::Degree,
        }
    }
}

impl From<NrMode> for AttackMode {
    fn from(m: NrMode) -> Self {
        match m {
            NrMode::Adaptive => AttackMode::Adaptive,
            NrMode::Static => AttackMode::Static,
        }
    }
}

impl From<NrCurveKind> for CurveKind {
    fn from(k: NrCurveKind) -> Self {
        match k {
            NrCurveKind::Connectivity => CurveKind::Connectivity,
            NrCurveKind::Controllability => CurveKind::Controllability,
        }
    }
}

impl From<NrMaskKind> for MaskKind {
    fn from(k: NrMaskKind) -> Self {
        match k {
            NrMaskKind::Null => MaskKind::Null,
            NrMaskKind::Confusion => MaskKind::Confusion,
        }
    }
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` nodes from `m` edges given as `2 * m` node ids
/// (`u0, v0, u1, v1, ...`). Duplicate edges are merged.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be null when `m` is
/// 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_from_edges(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guard(|| {
        non_null!(out);
        if m > 0 {
            non_null!(edges);
        }
        let flat: &[u32] = if m == 0 {
            &[]
        } else {
            slice::from_raw_parts(edges, 2 * m)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        let g = try_core!(DiGraph::from_edge_list(n, pairs));
        emit_graph(g, out)
    })
}

/// Generates a network with `round(k_avg * n)` edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_generate(
    topology: NrTopology,
    n: usize,
    k_avg: f64,
    seed: u64,
    out: *mut *mut NrGraph,
) -> NrStatus {
    guard(|| {
        non_null!(out);
        let cfg = NetConfig::new(topology.into(), n, k_avg, seed);
        emit_graph(try_core!(generate(&cfg)), out)
    })
}

/// Reads an RNET-EDGES file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_read(path: *const c_char, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| {
        non_null!(path, out);
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let file = try_core!(std::fs::File::open(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        }));
        let g = try_core!(read_edge_list(std::io::BufReader::new(file)));
        emit_graph(g, out)
    })
}

/// Writes `g` as an RNET-EDGES file.
///
/// # Safety
/// `g` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_write(g: *const NrGraph, path: *const c_char) -> NrStatus {
    guard(|| {
        non_null!(g, path);
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let io = |e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        };
        let file = try_core!(std::fs::File::create(path).map_err(io));
        try_core!(write_edge_list(graph_ref(g), std::io::BufWriter::new(file)).map_err(io));
        NrStatus::Ok
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_free(g: *mut NrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Independent copy of `g`, including removed-node state.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_clone(g: *const NrGraph, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| {
        non_null!(g, out);
        emit_graph(graph_ref(g).clone(), out)
    })
}

/// Total node count, including removed nodes. 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_count(g: *const NrGraph) -> usize {
    if g.is_null() {
        0
    } else {
        graph_ref(g).node_count()
    }
}

/// Nodes not yet removed. 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_active_count(g: *const NrGraph) -> usize {
    if g.is_null() {
        0
    } else {
        graph_ref(g).active_count()
    }
}

/// Edges between active nodes. 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_edge_count(g: *const NrGraph) -> usize {
    if g.is_null() {
        0
    } else {
        graph_ref(g).edge_count()
    }
}

/// Removes node `v` and its incident edges.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_remove_node(g: *mut NrGraph, v: usize) -> NrStatus {
    guard(|| {
        non_null!(g);
        try_core!((*g).inner.remove_node(v));
        NrStatus::Ok
    })
}

/// Size of the largest weakly connected component.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_weak_lcc(g: *const NrGraph, out: *mut usize) -> NrStatus {
    guard(|| {
        non_null!(g, out);
        *out = try_core!(graph_ref(g).weak_lcc_size());
        NrStatus::Ok
    })
}

/// Minimum number of driver nodes, `max(1, active - maximum matching)`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_min_driver_nodes(g: *const NrGraph, out: *mut usize) -> NrStatus {
    guard(|| {
        non_null!(g, out);
        *out = try_core!(min_driver_nodes(graph_ref(g)));
        NrStatus::Ok
    })
}

/// Raw betweenness per node id into `out[0..node_count]`.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_betweenness(
    g: *const NrGraph,
    out: *mut f64,
    len: usize,
) -> NrStatus {
    guard(|| {
        non_null!(g, out);
        let g = graph_ref(g);
        if len < g.node_count() {
            return fail(NrStatus::BufferTooSmall, "need node_count values");
        }
        let scores = try_core!(netrobust_core::attack::betweenness(g));
        slice::from_raw_parts_mut(out, scores.len()).copy_from_slice(&scores);
        NrStatus::Ok
    })
}

/// Row-major `n x n` adjacency image into `out`.
///
/// # Safety
/// `g` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_adjacency_image(
    g: *const NrGraph,
    out: *mut f32,
    len: usize,
) -> NrStatus {
    guard(|| {
        non_null!(g, out);
        let g = graph_ref(g);
        let need = g.node_count() * g.node_count();
        if len < need {
            return fail(NrStatus::BufferTooSmall, "need node_count^2 values");
        }
        let img = g.to_adjacency_image();
        slice::from_raw_parts_mut(out, need).copy_from_slice(img.pixels());
        NrStatus::Ok
    })
}

/// Full removal attack on an intact graph. Writes `node_count` curve values
/// to `curve` and, when `order` is non-null, the removal order to `order`.
/// `seed` only matters for random attacks.
///
/// # Safety
/// `g` must be a live handle; `curve` (and `order`, if non-null) must hold
/// `len` values.
#[no_mangle]
pub unsafe extern "C" fn nr_simulate_attack(
    g: *const NrGraph,
    strategy: NrStrategy,
    mode: NrMode,
    kind: NrCurveKind,
    seed: u64,
    recompute_every: usize,
    curve: *mut f64,
    order: *mut usize,
    len: usize,
) -> NrStatus {
    guard(|| {
        non_null!(g, curve);
        let g = graph_ref(g);
        if len < g.node_count() {
            return fail(NrStatus::BufferTooSmall, "need node_count values");
        }
        let mut spec = AttackSpec::new(strategy.into(), mode.into(), seed);
        spec.recompute_every = recompute_every;
        let (seq, values) = try_core!(simulate_attack(g, &spec, kind.into(), &mut spec.rng()));
        slice::from_raw_parts_mut(curve, values.values.len()).copy_from_slice(&values.values);
        if !order.is_null() {
            slice::from_raw_parts_mut(order, seq.len()).copy_from_slice(seq.as_slice());
        }
        NrStatus::Ok
    })
}

/// Masks an `n x n` row-major image in place. `row` and `col` are the
/// 1-based upper-left corner of the `size x size` square.
///
/// # Safety
/// `pixels` must hold `n * n` values in `[0, 1]`.
#[no_mangle]
pub unsafe extern "C" fn nr_apply_mask(
    pixels: *mut f32,
    n: usize,
    kind: NrMaskKind,
    size: usize,
    row: usize,
    col: usize,
) -> NrStatus {
    guard(|| {
        non_null!(pixels);
        let buf = slice::from_raw_parts_mut(pixels, n * n);
        let Some(img) = GrayImage::from_pixels(n, n, buf.to_vec()) else {
            return fail(NrStatus::InvalidArgument, "pixels must lie in [0, 1]");
        };
        let masked = try_core!(apply_mask(
            &img,
            &MaskSpec::new(kind.into(), size, row, col)
        ));
        buf.copy_from_slice(masked.pixels());
        NrStatus::Ok
    })
}

/// Fraction of an `n x n` image hidden by an `s x s` mask.
#[no_mangle]
pub extern "C" fn nr_pixel_loss_ratio(n: usize, s: usize) -> f64 {
    netrobust_core::mask::pixel_loss_ratio(n, s)
}

/// Mann-Whitney U test of `x` against `y`.
///
/// # Safety
/// `x` and `y` must hold `nx` and `ny` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_mann_whitney(
    x: *const f64,
    nx: usize,
    y: *const f64,
    ny: usize,
    alternative: NrAlternative,
    out: *mut NrMannWhitney,
) -> NrStatus {
    guard(|| {
        non_null!(x, y, out);
        let alt = match alternative {
            NrAlternative::Greater => Alternative::Greater,
            NrAlternative::TwoSided => Alternative::TwoSided,
        };
        let r = try_core!(mann_whitney(
            slice::from_raw_parts(x, nx),
            slice::from_raw_parts(y, ny),
            alt
        ));
        *out = NrMannWhitney {
            u_x: r.u_x,
            u_y: r.u_y,
            p_value: r.p_value,
            exact: r.exact,
            degenerate: r.degenerate,
        };
        NrStatus::Ok
    })
}

/// Per-job seed derived from a master seed and an index path.
///
/// # Safety
/// `indices` must hold `len` values (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn nr_derive_seed(master: u64, indices: *const u64, len: usize) -> u64 {
    let idx: &[u64] = if len == 0 || indices.is_null() {
        &[]
    } else {
        slice::from_raw_parts(indices, len)
    };
    netrobust_core::dataset::derive_seed(master, idx)
}
