//! C ABI for `framescale`.
//!
//! Frames live behind an opaque `FsFrame` handle created by `fs_frame_new`
//! and released with `fs_frame_free`. Every other function returns an
//! `FsStatus`; on failure a message is available from `fs_last_error_message`
//! on the same thread. Weight buffers always hold exactly `fs_frame_len`
//! entries.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use framescale::analysis::{frame_operator, is_tight, scaled_bounds};
use framescale::closed_form::{best_pair_scaling, min_condition_scaling, Method, ScalingResult};
use framescale::linalg::{apply_scaling, Frame, Scaling, Vec2};
use framescale::oracle::{grid_search_scaling, verify_scaling, SearchSpec};
use framescale::restricted::{restricted_scaling, Budget};
use framescale::scalability::classify_scalability;
use framescale::FrameError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Dimension = 3,
    DegenerateFrame = 4,
    DegeneratePair = 5,
    NormalPosition = 6,
    NotScalable = 7,
    Precondition = 8,
    BudgetExceeded = 9,
    InternalConsistency = 10,
    Panic = 11,
}

const STATUS_NAMES: [&std::ffi::CStr; 12] = [
    c"ok",
    c"null pointer",
    c"invalid input",
    c"dimension mismatch",
    c"degenerate frame",
    c"degenerate pair",
    c"not in normal position",
    c"not scalable",
    c"precondition violated",
    c"search budget exceeded",
    c"internal consistency failure",
    c"panic",
];

/// How a scaling was obtained.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsMethod {
    TightWitness = 0,
    EqualPair = 1,
    BestPair = 2,
    InlineComponent = 3,
    Restricted = 4,
    GridSearch = 5,
    Refined = 6,
}

impl From<Method> for FsMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::TightWitness => FsMethod::TightWitness,
            Method::EqualPair => FsMethod::EqualPair,
            Method::BestPair => FsMethod::BestPair,
            Method::InlineComponent => FsMethod::InlineComponent,
            Method::Restricted => FsMethod::Restricted,
            Method::GridSearch => FsMethod::GridSearch,
            Method::Refined => FsMethod::Refined,
        }
    }
}

/// Optimal frame bounds. `cond` is `INFINITY` when the family does not span.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FsBounds {
    pub lower: f64,
    pub upper: f64,
    pub cond: f64,
}

/// Entries of the symmetric frame operator.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FsOperator {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

/// Summary of a computed scaling; the weights go to a separate buffer.
/// `pair_i` and `pair_j` are -1 when no distinguished pair applies.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsScalingInfo {
    pub method: FsMethod,
    pub bounds: FsBounds,
    pub pair_i: i64,
    pub pair_j: i64,
}

/// Opaque frame handle.
pub struct FsFrame {
    frame: Frame,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FsStatus, String);

impl From<FrameError> for Failure {
    fn from(e: FrameError) -> Self {
        let status = match e {
            FrameError::InvalidInput(_) => FsStatus::InvalidInput,
            FrameError::Dimension { .. } => FsStatus::Dimension,
            FrameError::DegenerateFrame(_) => FsStatus::DegenerateFrame,
            FrameError::DegeneratePair(..) => FsStatus::DegeneratePair,
            FrameError::NormalPosition(_) => FsStatus::NormalPosition,
            FrameError::NotScalable { .. } => FsStatus::NotScalable,
            FrameError::Precondition(_) => FsStatus::Precondition,
            FrameError::BudgetExceeded { .. } => FsStatus::BudgetExceeded,
            FrameError::InternalConsistency(_) => FsStatus::InternalConsistency,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&message);
            FsStatus::Panic
        }
    }
}

unsafe fn frame_ref<'a>(frame: *const FsFrame) -> Result<&'a Frame, Failure> {
    frame.as_ref().map(|h| &h.frame).ok_or_else(|| null("frame"))
}

unsafe fn out_ref<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    out.as_mut().ok_or_else(|| null(what))
}

/// Reads `m` weights from a nullable pointer; null means all ones.
unsafe fn weights_in(weights: *const f64, m: usize) -> Result<Scaling, Failure> {
    if weights.is_null() {
        return Ok(Scaling::ones(m));
    }
    Ok(Scaling::new(slice::from_raw_parts(weights, m).to_vec())?)
}

unsafe fn weights_out<'a>(out: *mut f64, m: usize) -> Result<&'a mut [f64], Failure> {
    if out.is_null() {
        return Err(null("out_weights"));
    }
    Ok(slice::from_raw_parts_mut(out, m))
}

fn bounds_out(b: &framescale::FrameBounds) -> FsBounds {
    FsBounds { lower: b.lower, upper: b.upper, cond: b.cond }
}

unsafe fn write_result(result: &ScalingResult, out_weights: *mut f64, out_info: *mut FsScalingInfo) -> Result<(), Failure> {
    let buf = weights_out(out_weights, result.weights().len())?;
    let info = out_ref(out_info, "out_info")?;
    buf.copy_from_slice(result.weights());
    let (pair_i, pair_j) = result.pair.map_or((-1, -1), |(i, j)| (i as i64, j as i64));
    *info = FsScalingInfo { method: result.method.into(), bounds: bounds_out(&result.bounds), pair_i, pair_j };
    Ok(())
}

/// Builds a frame from `m` interleaved coordinates `x0, y0, x1, y1, ...`
/// (so `xy` holds `2 m` doubles). Requires `m >= 2`, finite, nonzero vectors.
///
/// # Safety
/// `xy` must point to `2 * m` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_frame_new(xy: *const f64, m: usize, out: *mut *mut FsFrame) -> FsStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if xy.is_null() {
            return Err(null("xy"));
        }
        let coords = slice::from_raw_parts(xy, 2 * m);
        let vectors = coords.chunks_exact(2).map(|c| Vec2::new(c[0], c[1])).collect();
        let frame = Frame::new(vectors)?;
        *out = Box::into_raw(Box::new(FsFrame { frame }));
        Ok(())
    })
}

/// Releases a frame. Null is ignored.
///
/// # Safety
/// `frame` must come from `fs_frame_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_frame_free(frame: *mut FsFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Number of vectors, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_frame_len(frame: *const FsFrame) -> usize {
    frame.as_ref().map_or(0, |h| h.frame.len())
}

/// Frame operator of the family scaled by `weights` (null: unscaled).
///
/// # Safety
/// `frame` must be a live handle, `weights` null or `fs_frame_len` doubles,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_frame_operator(frame: *const FsFrame, weights: *const f64, out: *mut FsOperator) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        let out = out_ref(out, "out")?;
        let family = apply_scaling(frame, &weights_in(weights, frame.len())?)?;
        let s = frame_operator(&family)?;
        *out = FsOperator { s11: s.s11, s12: s.s12, s22: s.s22 };
        Ok(())
    })
}

/// Frame bounds of the family scaled by `weights` (null: unscaled).
///
/// # Safety
/// As for `fs_frame_operator`.
#[no_mangle]
pub unsafe extern "C" fn fs_frame_bounds(frame: *const FsFrame, weights: *const f64, out: *mut FsBounds) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        let out = out_ref(out, "out")?;
        *out = bounds_out(&scaled_bounds(frame, &weights_in(weights, frame.len())?)?);
        Ok(())
    })
}

/// Tightness test of the scaled family at relative tolerance `tol`.
///
/// # Safety
/// As for `fs_frame_operator`, with `out_tight` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_is_tight(frame: *const FsFrame, weights: *const f64, tol: f64, out_tight: *mut bool) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        let out = out_ref(out_tight, "out_tight")?;
        *out = is_tight(&apply_scaling(frame, &weights_in(weights, frame.len())?)?, tol).is_tight;
        Ok(())
    })
}

/// Scalability verdict. `out_spread` receives the angular spread of the
/// directions modulo π. When scalable and `out_witness` is not null, a
/// tight-making weight vector is written there.
///
/// # Safety
/// `frame` live; `out_scalable`, `out_spread` writable; `out_witness` null
/// or `fs_frame_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fs_classify(
    frame: *const FsFrame,
    out_scalable: *mut bool,
    out_spread: *mut f64,
    out_witness: *mut f64,
) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        let scalable = out_ref(out_scalable, "out_scalable")?;
        let spread = out_ref(out_spread, "out_spread")?;
        let verdict = classify_scalability(frame)?;
        *scalable = verdict.scalable;
        *spread = verdict.spread;
        if let (Some(w), false) = (&verdict.witness, out_witness.is_null()) {
            weights_out(out_witness, frame.len())?.copy_from_slice(w.weights());
        }
        Ok(())
    })
}

/// Minimum-condition scaling: a tight witness when one exists, otherwise
/// the best equalized pair.
///
/// # Safety
/// `frame` live; `out_weights` holds `fs_frame_len` doubles; `out_info` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_min_condition_scaling(
    frame: *const FsFrame,
    out_weights: *mut f64,
    out_info: *mut FsScalingInfo,
) -> FsStatus {
    guard(|| write_result(&min_condition_scaling(frame_ref(frame)?)?, out_weights, out_info))
}

/// Best-pair scaling of a non-scalable frame.
///
/// # Safety
/// As for `fs_min_condition_scaling`.
#[no_mangle]
pub unsafe extern "C" fn fs_best_pair_scaling(
    frame: *const FsFrame,
    out_weights: *mut f64,
    out_info: *mut FsScalingInfo,
) -> FsStatus {
    guard(|| write_result(&best_pair_scaling(frame_ref(frame)?)?, out_weights, out_info))
}

/// Budgeted scaling with every weight in `[1 - epsilon, 1 + epsilon]`.
///
/// # Safety
/// As for `fs_min_condition_scaling`.
#[no_mangle]
pub unsafe extern "C" fn fs_restricted_scaling(
    frame: *const FsFrame,
    epsilon: f64,
    out_weights: *mut f64,
    out_info: *mut FsScalingInfo,
) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        write_result(&restricted_scaling(frame, Budget::new(epsilon)?)?, out_weights, out_info)
    })
}

/// Grid search with `levels` equally spaced values per weight on `[lo, hi]`,
/// optionally refined by coordinate descent.
///
/// # Safety
/// As for `fs_min_condition_scaling`.
#[no_mangle]
pub unsafe extern "C" fn fs_grid_search(
    frame: *const FsFrame,
    lo: f64,
    hi: f64,
    levels: usize,
    refine: bool,
    out_weights: *mut f64,
    out_info: *mut FsScalingInfo,
) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        let spec = SearchSpec::uniform(frame.len(), lo, hi, levels)?.with_refine(refine);
        write_result(&grid_search_scaling(frame, &spec)?.result, out_weights, out_info)
    })
}

/// Recomputes the condition number of the scaled family and compares it
/// with `claimed` at relative tolerance `tol`.
///
/// # Safety
/// `frame` live; `weights` holds `fs_frame_len` doubles; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn fs_verify_scaling(
    frame: *const FsFrame,
    weights: *const f64,
    claimed: f64,
    tol: f64,
    out_passed: *mut bool,
    out_cond: *mut f64,
) -> FsStatus {
    guard(|| {
        let frame = frame_ref(frame)?;
        if weights.is_null() {
            return Err(null("weights"));
        }
        let passed = out_ref(out_passed, "out_passed")?;
        let cond = out_ref(out_cond, "out_cond")?;
        let report = verify_scaling(frame, &weights_in(weights, frame.len())?, claimed, tol)?;
        *passed = report.passed;
        *cond = report.cond;
        Ok(())
    })
}

/// Message for the last failed call on this thread, empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn fs_status_name(status: c_int) -> *const c_char {
    usize::try_from(status)
        .ok()
        .and_then(|i| STATUS_NAMES.get(i))
        .map_or(c"unknown status".as_ptr(), |s| s.as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fs_version() -> *const c_char {
    static VERSION: &std::ffi::CStr = match std::ffi::CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
