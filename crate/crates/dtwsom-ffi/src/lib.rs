//! C ABI over the dtwsom library.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `*_new`-style call and released by the matching `*_free`. Functions return
//! a [`DtwsomStatus`]; on any non-OK status the thread-local message behind
//! [`dtwsom_last_error_message`] describes the failure. Out-parameters are
//! written only on `Ok`.
//!
//! Buffer-filling accessors take a capacity in elements and fail with
//! `BufferTooSmall` (reporting the needed size in the error message) instead
//! of writing past the end.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dtwsom::{
    dtw, extract_motifs, generate, matrix_profile, u_matrix, winner_matrix, DtwError, DtwResult,
    LongSeries, MotifError, MotifSet, Sequence, SeriesError, SomError, SomNetwork, TrainingConfig,
    TrainingTrace,
};

/// Result of every fallible call in this ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtwsomStatus {
    /// The call succeeded and all out-parameters are set.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violated a documented precondition.
    InvalidArgument = 2,
    /// The warping window cannot bridge the two sequence lengths.
    InfeasibleWindow = 3,
    /// An index argument was past the end of the collection.
    IndexOutOfRange = 4,
    /// The caller's buffer is smaller than the data to copy.
    BufferTooSmall = 5,
    /// Serialized text was not a valid document.
    JsonError = 6,
    /// The library panicked; state may be stale but memory is intact.
    Internal = 7,
}

/// A list of training patterns sharing one dimension count.
pub struct DtwsomPatterns {
    dim: usize,
    sequences: Vec<Sequence>,
}

/// A warping alignment between two sequences.
pub struct DtwsomAlignment {
    result: DtwResult,
}

/// A trained (or freshly initialized) map plus its training trace.
pub struct DtwsomNetwork {
    network: SomNetwork,
    trace: TrainingTrace,
}

/// Motifs extracted from one series, most significant first.
pub struct DtwsomMotifs {
    set: MotifSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: DtwsomStatus, message: impl Into<String>) -> DtwsomStatus {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).unwrap_or_default());
    });
    status
}

trait FfiError: std::fmt::Display {
    fn status(&self) -> DtwsomStatus;
}

impl FfiError for SeriesError {
    fn status(&self) -> DtwsomStatus {
        DtwsomStatus::InvalidArgument
    }
}

impl FfiError for DtwError {
    fn status(&self) -> DtwsomStatus {
        match self {
            DtwError::InfeasibleWindow { .. } => DtwsomStatus::InfeasibleWindow,
            DtwError::DimensionMismatch { .. } => DtwsomStatus::InvalidArgument,
        }
    }
}

impl FfiError for SomError {
    fn status(&self) -> DtwsomStatus {
        match self {
            SomError::Dtw(inner) => inner.status(),
            _ => DtwsomStatus::InvalidArgument,
        }
    }
}

impl FfiError for MotifError {
    fn status(&self) -> DtwsomStatus {
        DtwsomStatus::InvalidArgument
    }
}

impl FfiError for serde_json::Error {
    fn status(&self) -> DtwsomStatus {
        DtwsomStatus::JsonError
    }
}

fn map_err<E: FfiError>(err: E) -> DtwsomStatus {
    fail(err.status(), err.to_string())
}

/// Runs the body under a panic guard so unwinding never crosses the ABI.
fn guard(body: impl FnOnce() -> DtwsomStatus) -> DtwsomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(DtwsomStatus::Internal, "internal panic"),
    }
}

/// Reads `count` elements from a caller buffer; null is allowed only when
/// `count` is zero.
unsafe fn slice_arg<'a, T>(name: &str, ptr: *const T, count: usize) -> Result<&'a [T], DtwsomStatus> {
    if count == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(fail(
            DtwsomStatus::NullPointer,
            format!("{name} is null but {count} elements were promised"),
        ));
    }
    Ok(std::slice::from_raw_parts(ptr, count))
}

unsafe fn ref_arg<'a, T>(name: &str, ptr: *const T) -> Result<&'a T, DtwsomStatus> {
    ptr.as_ref()
        .ok_or_else(|| fail(DtwsomStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_arg<'a, T>(name: &str, ptr: *mut T) -> Result<&'a mut T, DtwsomStatus> {
    ptr.as_mut()
        .ok_or_else(|| fail(DtwsomStatus::NullPointer, format!("{name} is null")))
}

/// Copies a slice into a caller buffer after checking its capacity.
unsafe fn fill_buffer<T: Copy>(
    data: &[T],
    buffer: *mut T,
    capacity: usize,
) -> Result<(), DtwsomStatus> {
    if data.len() > capacity {
        return Err(fail(
            DtwsomStatus::BufferTooSmall,
            format!("buffer holds {capacity} elements, {} are needed", data.len()),
        ));
    }
    if data.is_empty() {
        return Ok(());
    }
    if buffer.is_null() {
        return Err(fail(DtwsomStatus::NullPointer, "buffer is null"));
    }
    std::ptr::copy_nonoverlapping(data.as_ptr(), buffer, data.len());
    Ok(())
}

fn window_from(window: i64) -> Option<usize> {
    usize::try_from(window).ok()
}

unsafe fn sequence_arg(
    name: &str,
    values: *const f64,
    points: usize,
    dim: usize,
) -> Result<Sequence, DtwsomStatus> {
    let flat = slice_arg(name, values, points.saturating_mul(dim))?;
    Sequence::new(flat.to_vec(), dim).map_err(map_err)
}

macro_rules! ok_or_return {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dtwsom_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Message describing this thread's most recent failure, or null if every
/// call so far succeeded. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn dtwsom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |text| text.as_ptr())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
///
/// `text` must have come from a dtwsom call and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Computes the warping distance between two sequences laid out as
/// point-major `points * dim` arrays. A negative `window` means
/// unconstrained; otherwise the alignment may stray at most `window` points
/// from the diagonal.
///
/// # Safety
///
/// `a` and `b` must point to `a_points * dim` and `b_points * dim` readable
/// doubles; `out_distance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_distance(
    a: *const f64,
    a_points: usize,
    b: *const f64,
    b_points: usize,
    dim: usize,
    window: i64,
    out_distance: *mut f64,
) -> DtwsomStatus {
    guard(|| {
        let seq_a = ok_or_return!(sequence_arg("a", a, a_points, dim));
        let seq_b = ok_or_return!(sequence_arg("b", b, b_points, dim));
        let out = ok_or_return!(out_arg("out_distance", out_distance));
        match dtwsom::dtw_distance(&seq_a, &seq_b, window_from(window)) {
            Ok(distance) => {
                *out = distance;
                DtwsomStatus::Ok
            }
            Err(err) => map_err(err),
        }
    })
}

/// Computes the full warping alignment between two sequences. The handle
/// carries the distance and the matched index pairs.
///
/// # Safety
///
/// Pointer arguments as in [`dtwsom_distance`]; `out_alignment` must be
/// writable. Free the handle with [`dtwsom_alignment_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_align(
    a: *const f64,
    a_points: usize,
    b: *const f64,
    b_points: usize,
    dim: usize,
    window: i64,
    out_alignment: *mut *mut DtwsomAlignment,
) -> DtwsomStatus {
    guard(|| {
        let seq_a = ok_or_return!(sequence_arg("a", a, a_points, dim));
        let seq_b = ok_or_return!(sequence_arg("b", b, b_points, dim));
        let out = ok_or_return!(out_arg("out_alignment", out_alignment));
        match dtw(&seq_a, &seq_b, window_from(window)) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(DtwsomAlignment { result }));
                DtwsomStatus::Ok
            }
            Err(err) => map_err(err),
        }
    })
}

/// Distance of an alignment.
///
/// # Safety
///
/// `alignment` must be a live handle; `out_distance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_alignment_distance(
    alignment: *const DtwsomAlignment,
    out_distance: *mut f64,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("alignment", alignment));
        let out = ok_or_return!(out_arg("out_distance", out_distance));
        *out = handle.result.distance();
        DtwsomStatus::Ok
    })
}

/// Number of matched index pairs in an alignment.
///
/// # Safety
///
/// `alignment` must be a live handle; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_alignment_len(
    alignment: *const DtwsomAlignment,
    out_len: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("alignment", alignment));
        let out = ok_or_return!(out_arg("out_len", out_len));
        *out = handle.result.path().len();
        DtwsomStatus::Ok
    })
}

/// The `at`-th matched pair of an alignment, in path order.
///
/// # Safety
///
/// `alignment` must be a live handle; `out_a` and `out_b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_alignment_pair(
    alignment: *const DtwsomAlignment,
    at: usize,
    out_a: *mut usize,
    out_b: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("alignment", alignment));
        let a = ok_or_return!(out_arg("out_a", out_a));
        let b = ok_or_return!(out_arg("out_b", out_b));
        match handle.result.path().matches().get(at) {
            Some(&(i, j)) => {
                *a = i;
                *b = j;
                DtwsomStatus::Ok
            }
            None => fail(
                DtwsomStatus::IndexOutOfRange,
                format!(
                    "pair {at} is out of range for a path of {} matches",
                    handle.result.path().len()
                ),
            ),
        }
    })
}

/// Releases an alignment handle. Null is ignored.
///
/// # Safety
///
/// `alignment` must have come from [`dtwsom_align`] and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_alignment_free(alignment: *mut DtwsomAlignment) {
    if !alignment.is_null() {
        drop(Box::from_raw(alignment));
    }
}

/// Creates an empty pattern list whose sequences will all have `dim` values
/// per point.
///
/// # Safety
///
/// `out_patterns` must be writable. Free the handle with
/// [`dtwsom_patterns_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_new(
    dim: usize,
    out_patterns: *mut *mut DtwsomPatterns,
) -> DtwsomStatus {
    guard(|| {
        let out = ok_or_return!(out_arg("out_patterns", out_patterns));
        if dim == 0 {
            return fail(DtwsomStatus::InvalidArgument, "dim must be at least 1");
        }
        *out = Box::into_raw(Box::new(DtwsomPatterns {
            dim,
            sequences: Vec::new(),
        }));
        DtwsomStatus::Ok
    })
}

/// Appends one sequence of `points` points to a pattern list.
///
/// # Safety
///
/// `patterns` must be a live handle; `values` must point to `points * dim`
/// readable doubles, where `dim` was fixed at construction.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_push(
    patterns: *mut DtwsomPatterns,
    values: *const f64,
    points: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(out_arg("patterns", patterns));
        let sequence = ok_or_return!(sequence_arg("values", values, points, handle.dim));
        handle.sequences.push(sequence);
        DtwsomStatus::Ok
    })
}

/// Generates labeled synthetic motif centers and keeps the centers, in the
/// generator's deterministic order (clusters cycle with period 3).
///
/// # Safety
///
/// `out_patterns` must be writable. Free the handle with
/// [`dtwsom_patterns_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_synthetic(
    count: usize,
    seed: u64,
    out_patterns: *mut *mut DtwsomPatterns,
) -> DtwsomStatus {
    guard(|| {
        let out = ok_or_return!(out_arg("out_patterns", out_patterns));
        if count == 0 {
            return fail(DtwsomStatus::InvalidArgument, "count must be at least 1");
        }
        let sequences: Vec<Sequence> = generate(count, seed)
            .into_iter()
            .map(|(sequence, _)| sequence)
            .collect();
        *out = Box::into_raw(Box::new(DtwsomPatterns { dim: 1, sequences }));
        DtwsomStatus::Ok
    })
}

/// Number of sequences in a pattern list.
///
/// # Safety
///
/// `patterns` must be a live handle; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_len(
    patterns: *const DtwsomPatterns,
    out_len: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("patterns", patterns));
        let out = ok_or_return!(out_arg("out_len", out_len));
        *out = handle.sequences.len();
        DtwsomStatus::Ok
    })
}

/// Values per point shared by every sequence in the list.
///
/// # Safety
///
/// `patterns` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_dim(
    patterns: *const DtwsomPatterns,
    out_dim: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("patterns", patterns));
        let out = ok_or_return!(out_arg("out_dim", out_dim));
        *out = handle.dim;
        DtwsomStatus::Ok
    })
}

/// Point count of the `at`-th sequence.
///
/// # Safety
///
/// `patterns` must be a live handle; `out_points` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_sequence_len(
    patterns: *const DtwsomPatterns,
    at: usize,
    out_points: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("patterns", patterns));
        let out = ok_or_return!(out_arg("out_points", out_points));
        match handle.sequences.get(at) {
            Some(sequence) => {
                *out = sequence.len();
                DtwsomStatus::Ok
            }
            None => fail(
                DtwsomStatus::IndexOutOfRange,
                format!(
                    "sequence {at} is out of range for {} patterns",
                    handle.sequences.len()
                ),
            ),
        }
    })
}

/// Copies the `at`-th sequence, point major, into `buffer`
/// (`points * dim` elements needed).
///
/// # Safety
///
/// `patterns` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_sequence_values(
    patterns: *const DtwsomPatterns,
    at: usize,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("patterns", patterns));
        let Some(sequence) = handle.sequences.get(at) else {
            return fail(
                DtwsomStatus::IndexOutOfRange,
                format!(
                    "sequence {at} is out of range for {} patterns",
                    handle.sequences.len()
                ),
            );
        };
        ok_or_return!(fill_buffer(sequence.values(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Releases a pattern list. Null is ignored.
///
/// # Safety
///
/// `patterns` must have come from this library and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_patterns_free(patterns: *mut DtwsomPatterns) {
    if !patterns.is_null() {
        drop(Box::from_raw(patterns));
    }
}

/// Initializes a `rows x cols` map from the patterns and trains it.
///
/// `radius` at or below zero selects the default (half the larger grid
/// side); a negative `window` leaves the warping unconstrained. With
/// `anchor_count` zero the units are sampled randomly; otherwise the listed
/// pattern indices are pinned to the cells nearest the grid diagonal first.
///
/// # Safety
///
/// `patterns` must be a live handle; `anchors` must point to `anchor_count`
/// readable indices (null allowed when the count is zero); `out_network`
/// must be writable. Free the handle with [`dtwsom_network_free`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn dtwsom_network_train(
    patterns: *const DtwsomPatterns,
    rows: usize,
    cols: usize,
    epochs: usize,
    alpha: f64,
    radius: f64,
    window: i64,
    seed: u64,
    anchors: *const usize,
    anchor_count: usize,
    out_network: *mut *mut DtwsomNetwork,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("patterns", patterns));
        let anchor_list = ok_or_return!(slice_arg("anchors", anchors, anchor_count));
        let out = ok_or_return!(out_arg("out_network", out_network));
        let radius = if radius > 0.0 {
            radius
        } else {
            dtwsom::default_radius(rows.max(1), cols.max(1))
        };
        let config =
            match TrainingConfig::new(epochs, alpha, radius, window_from(window), seed) {
                Ok(config) => config,
                Err(err) => return map_err(err),
            };
        let built = if anchor_list.is_empty() {
            SomNetwork::init_random_sample(&handle.sequences, rows, cols, config)
        } else {
            SomNetwork::init_anchor(&handle.sequences, anchor_list, rows, cols, config)
        };
        let mut network = match built {
            Ok(network) => network,
            Err(err) => return map_err(err),
        };
        let trace = match network.train(&handle.sequences) {
            Ok(trace) => trace,
            Err(err) => return map_err(err),
        };
        *out = Box::into_raw(Box::new(DtwsomNetwork { network, trace }));
        DtwsomStatus::Ok
    })
}

/// Grid shape of a network.
///
/// # Safety
///
/// `network` must be a live handle; `out_rows` and `out_cols` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_shape(
    network: *const DtwsomNetwork,
    out_rows: *mut usize,
    out_cols: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let rows = ok_or_return!(out_arg("out_rows", out_rows));
        let cols = ok_or_return!(out_arg("out_cols", out_cols));
        *rows = handle.network.rows();
        *cols = handle.network.cols();
        DtwsomStatus::Ok
    })
}

/// Values per point in every unit of a network.
///
/// # Safety
///
/// `network` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_dim(
    network: *const DtwsomNetwork,
    out_dim: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let out = ok_or_return!(out_arg("out_dim", out_dim));
        *out = handle.network.dim();
        DtwsomStatus::Ok
    })
}

/// Completed training epochs of a network.
///
/// # Safety
///
/// `network` must be a live handle; `out_epoch` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_epoch(
    network: *const DtwsomNetwork,
    out_epoch: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let out = ok_or_return!(out_arg("out_epoch", out_epoch));
        *out = handle.network.epoch();
        DtwsomStatus::Ok
    })
}

/// Point count of one unit, indexed row major.
///
/// # Safety
///
/// `network` must be a live handle; `out_points` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_unit_len(
    network: *const DtwsomNetwork,
    unit: usize,
    out_points: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let out = ok_or_return!(out_arg("out_points", out_points));
        match handle.network.units().get(unit) {
            Some(sequence) => {
                *out = sequence.len();
                DtwsomStatus::Ok
            }
            None => fail(
                DtwsomStatus::IndexOutOfRange,
                format!(
                    "unit {unit} is out of range for {} units",
                    handle.network.units().len()
                ),
            ),
        }
    })
}

/// Copies one unit's values, point major, into `buffer`.
///
/// # Safety
///
/// `network` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_unit_values(
    network: *const DtwsomNetwork,
    unit: usize,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let Some(sequence) = handle.network.units().get(unit) else {
            return fail(
                DtwsomStatus::IndexOutOfRange,
                format!(
                    "unit {unit} is out of range for {} units",
                    handle.network.units().len()
                ),
            );
        };
        ok_or_return!(fill_buffer(sequence.values(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Finds the best-matching unit for one pattern (row-major index and
/// warping distance).
///
/// # Safety
///
/// `network` must be a live handle; `values` must point to
/// `points * dim` readable doubles; `out_unit` and `out_distance` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_bmu(
    network: *const DtwsomNetwork,
    values: *const f64,
    points: usize,
    out_unit: *mut usize,
    out_distance: *mut f64,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let pattern =
            ok_or_return!(sequence_arg("values", values, points, handle.network.dim()));
        let unit = ok_or_return!(out_arg("out_unit", out_unit));
        let distance = ok_or_return!(out_arg("out_distance", out_distance));
        match handle.network.bmu(&pattern) {
            Ok((index, d)) => {
                *unit = index;
                *distance = d;
                DtwsomStatus::Ok
            }
            Err(err) => map_err(err),
        }
    })
}

/// Mean distance from each pattern to its best-matching unit.
///
/// # Safety
///
/// Both handles must be live; `out_error` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_quantization_error(
    network: *const DtwsomNetwork,
    patterns: *const DtwsomPatterns,
    out_error: *mut f64,
) -> DtwsomStatus {
    guard(|| {
        let net = ok_or_return!(ref_arg("network", network));
        let pats = ok_or_return!(ref_arg("patterns", patterns));
        let out = ok_or_return!(out_arg("out_error", out_error));
        match net.network.quantization_error(&pats.sequences) {
            Ok(error) => {
                *out = error;
                DtwsomStatus::Ok
            }
            Err(err) => map_err(err),
        }
    })
}

/// Number of recorded training epochs (zero for a network loaded from
/// JSON, since the trace is not part of the model document).
///
/// # Safety
///
/// `network` must be a live handle; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_trace_len(
    network: *const DtwsomNetwork,
    out_len: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let out = ok_or_return!(out_arg("out_len", out_len));
        *out = handle.trace.quantization_error.len();
        DtwsomStatus::Ok
    })
}

/// Copies the per-epoch quantization errors into `buffer`.
///
/// # Safety
///
/// `network` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_trace_quantization_error(
    network: *const DtwsomNetwork,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        ok_or_return!(fill_buffer(&handle.trace.quantization_error, buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Copies the per-epoch learning rates into `buffer`.
///
/// # Safety
///
/// `network` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_trace_alpha(
    network: *const DtwsomNetwork,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        ok_or_return!(fill_buffer(&handle.trace.alpha, buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Copies the per-epoch neighborhood radii into `buffer`.
///
/// # Safety
///
/// `network` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_trace_radius(
    network: *const DtwsomNetwork,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        ok_or_return!(fill_buffer(&handle.trace.radius, buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Copies the U-matrix (mean warping distance to grid neighbors, row
/// major, `rows * cols` values) into `buffer`.
///
/// # Safety
///
/// `network` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_u_matrix(
    network: *const DtwsomNetwork,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let u = match u_matrix(&handle.network) {
            Ok(u) => u,
            Err(err) => return map_err(err),
        };
        ok_or_return!(fill_buffer(u.values(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Copies per-unit winner counts over the patterns (row major,
/// `rows * cols` values) into `buffer`.
///
/// # Safety
///
/// Both handles must be live; `buffer` must hold `capacity` writable
/// elements.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_winner_counts(
    network: *const DtwsomNetwork,
    patterns: *const DtwsomPatterns,
    buffer: *mut usize,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let net = ok_or_return!(ref_arg("network", network));
        let pats = ok_or_return!(ref_arg("patterns", patterns));
        let winners = match winner_matrix(&net.network, &pats.sequences) {
            Ok(winners) => winners,
            Err(err) => return map_err(err),
        };
        ok_or_return!(fill_buffer(winners.counts(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Serializes a network to a JSON string owned by the caller; release it
/// with [`dtwsom_string_free`]. The training trace is not included.
///
/// # Safety
///
/// `network` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_to_json(
    network: *const DtwsomNetwork,
    out_text: *mut *mut c_char,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("network", network));
        let out = ok_or_return!(out_arg("out_text", out_text));
        let text = match serde_json::to_string(&handle.network) {
            Ok(text) => text,
            Err(err) => return map_err(err),
        };
        match CString::new(text) {
            Ok(text) => {
                *out = text.into_raw();
                DtwsomStatus::Ok
            }
            Err(_) => fail(DtwsomStatus::Internal, "serialized text contained NUL"),
        }
    })
}

/// Restores a network from its JSON form. The restored handle has an empty
/// training trace.
///
/// # Safety
///
/// `text` must be a NUL-terminated string; `out_network` must be writable.
/// Free the handle with [`dtwsom_network_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_from_json(
    text: *const c_char,
    out_network: *mut *mut DtwsomNetwork,
) -> DtwsomStatus {
    guard(|| {
        if text.is_null() {
            return fail(DtwsomStatus::NullPointer, "text is null");
        }
        let out = ok_or_return!(out_arg("out_network", out_network));
        let text = match CStr::from_ptr(text).to_str() {
            Ok(text) => text,
            Err(_) => return fail(DtwsomStatus::InvalidArgument, "text is not UTF-8"),
        };
        let network: SomNetwork = match serde_json::from_str(text) {
            Ok(network) => network,
            Err(err) => return map_err(err),
        };
        *out = Box::into_raw(Box::new(DtwsomNetwork {
            network,
            trace: TrainingTrace {
                quantization_error: Vec::new(),
                alpha: Vec::new(),
                radius: Vec::new(),
            },
        }));
        DtwsomStatus::Ok
    })
}

/// Releases a network handle. Null is ignored.
///
/// # Safety
///
/// `network` must have come from this library and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_network_free(network: *mut DtwsomNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Computes the z-normalized matrix profile of a univariate series and
/// copies it into two caller buffers of `len - window + 1` elements each.
///
/// # Safety
///
/// `values` must point to `len` readable doubles; `out_distances` and
/// `out_indices` must each hold `capacity` writable elements.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_matrix_profile(
    values: *const f64,
    len: usize,
    window: usize,
    out_distances: *mut f64,
    out_indices: *mut usize,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let data = ok_or_return!(slice_arg("values", values, len));
        let series = match LongSeries::from_values(data.to_vec(), 1) {
            Ok(series) => series,
            Err(err) => return map_err(err),
        };
        let profile = match matrix_profile(&series, window) {
            Ok(profile) => profile,
            Err(err) => return map_err(err),
        };
        ok_or_return!(fill_buffer(profile.distances(), out_distances, capacity));
        ok_or_return!(fill_buffer(profile.indices(), out_indices, capacity));
        DtwsomStatus::Ok
    })
}

/// Extracts up to `max_motifs` motifs of length `window` from a univariate
/// series via its matrix profile.
///
/// # Safety
///
/// `values` must point to `len` readable doubles; `out_motifs` must be
/// writable. Free the handle with [`dtwsom_motifs_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_extract_motifs(
    values: *const f64,
    len: usize,
    window: usize,
    max_motifs: usize,
    out_motifs: *mut *mut DtwsomMotifs,
) -> DtwsomStatus {
    guard(|| {
        let data = ok_or_return!(slice_arg("values", values, len));
        let out = ok_or_return!(out_arg("out_motifs", out_motifs));
        let series = match LongSeries::from_values(data.to_vec(), 1) {
            Ok(series) => series,
            Err(err) => return map_err(err),
        };
        let set = match extract_motifs(&series, window, max_motifs) {
            Ok(set) => set,
            Err(err) => return map_err(err),
        };
        *out = Box::into_raw(Box::new(DtwsomMotifs { set }));
        DtwsomStatus::Ok
    })
}

/// Number of extracted motifs.
///
/// # Safety
///
/// `motifs` must be a live handle; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_len(
    motifs: *const DtwsomMotifs,
    out_len: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let out = ok_or_return!(out_arg("out_len", out_len));
        *out = handle.set.len();
        DtwsomStatus::Ok
    })
}

/// Subsequence window the motifs were extracted with.
///
/// # Safety
///
/// `motifs` must be a live handle; `out_window` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_window(
    motifs: *const DtwsomMotifs,
    out_window: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let out = ok_or_return!(out_arg("out_window", out_window));
        *out = handle.set.window();
        DtwsomStatus::Ok
    })
}

/// Center offset, seed-pair distance, and occurrence count of the `at`-th
/// motif (rank order, most significant first).
///
/// # Safety
///
/// `motifs` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_info(
    motifs: *const DtwsomMotifs,
    at: usize,
    out_center_offset: *mut usize,
    out_pair_distance: *mut f64,
    out_member_count: *mut usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let offset = ok_or_return!(out_arg("out_center_offset", out_center_offset));
        let distance = ok_or_return!(out_arg("out_pair_distance", out_pair_distance));
        let members = ok_or_return!(out_arg("out_member_count", out_member_count));
        match handle.set.motifs().get(at) {
            Some(motif) => {
                *offset = motif.center_offset();
                *distance = motif.pair_distance();
                *members = motif.member_offsets().len();
                DtwsomStatus::Ok
            }
            None => fail(
                DtwsomStatus::IndexOutOfRange,
                format!("motif {at} is out of range for {} motifs", handle.set.len()),
            ),
        }
    })
}

/// Copies the `at`-th motif's occurrence offsets into `buffer`.
///
/// # Safety
///
/// `motifs` must be a live handle; `buffer` must hold `capacity` writable
/// elements.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_member_offsets(
    motifs: *const DtwsomMotifs,
    at: usize,
    buffer: *mut usize,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let Some(motif) = handle.set.motifs().get(at) else {
            return fail(
                DtwsomStatus::IndexOutOfRange,
                format!("motif {at} is out of range for {} motifs", handle.set.len()),
            );
        };
        ok_or_return!(fill_buffer(motif.member_offsets(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Copies the `at`-th motif's center values (`window` doubles) into
/// `buffer`.
///
/// # Safety
///
/// `motifs` must be a live handle; `buffer` must hold `capacity` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_center_values(
    motifs: *const DtwsomMotifs,
    at: usize,
    buffer: *mut f64,
    capacity: usize,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let Some(motif) = handle.set.motifs().get(at) else {
            return fail(
                DtwsomStatus::IndexOutOfRange,
                format!("motif {at} is out of range for {} motifs", handle.set.len()),
            );
        };
        ok_or_return!(fill_buffer(motif.center().values(), buffer, capacity));
        DtwsomStatus::Ok
    })
}

/// Builds a pattern list from the motif centers, in rank order, ready for
/// [`dtwsom_network_train`].
///
/// # Safety
///
/// `motifs` must be a live handle; `out_patterns` must be writable. Free
/// the handle with [`dtwsom_patterns_free`].
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_to_patterns(
    motifs: *const DtwsomMotifs,
    out_patterns: *mut *mut DtwsomPatterns,
) -> DtwsomStatus {
    guard(|| {
        let handle = ok_or_return!(ref_arg("motifs", motifs));
        let out = ok_or_return!(out_arg("out_patterns", out_patterns));
        let sequences: Vec<Sequence> = handle
            .set
            .motifs()
            .iter()
            .map(|motif| motif.center().clone())
            .collect();
        *out = Box::into_raw(Box::new(DtwsomPatterns { dim: 1, sequences }));
        DtwsomStatus::Ok
    })
}

/// Releases a motif handle. Null is ignored.
///
/// # Safety
///
/// `motifs` must have come from [`dtwsom_extract_motifs`] and not have been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn dtwsom_motifs_free(motifs: *mut DtwsomMotifs) {
    if !motifs.is_null() {
        drop(Box::from_raw(motifs));
    }
}
