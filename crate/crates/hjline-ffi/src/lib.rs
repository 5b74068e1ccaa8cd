//! C ABI over the hjline library: opaque handles, status codes, and
//! string-based word/template exchange. The header `include/hjline.h` is
//! generated by cbindgen at build time.
//!
//! Conventions:
//! - Every fallible call returns [`HjStatus`]; outputs go through `out`
//!   pointers that are written only on `HJ_STATUS_OK` (except where a
//!   function documents `HJ_STATUS_NO_VALUE` semantics).
//! - Strings returned through `char**` are allocated here and must be
//!   released with [`hj_string_free`]. Handles have their own `_free`.
//! - [`hj_last_error_message`] describes the most recent failure on the
//!   calling thread; the pointer is valid until the next failing call on
//!   that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use hjline::coloring::{canonical_weights, read_coloring_file, write_coloring_file, tplus_color};
use hjline::error::Error;
use hjline::lines::{interval_count, LineTemplate};
use hjline::search::{
    decide_all_colorings, pigeonhole_line, scan, verify_even_remark, verify_theorem,
    OracleOptions, ScanOptions, SearchReport, Verdict,
};
use hjline::{ColoringSpec, WeightVector, Word};

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HjStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments violate a precondition (range, parity, dimensions).
    InvalidArgument = 2,
    /// Malformed text: word, template, or coloring file.
    ParseError = 3,
    /// The requested search exceeds the configured budget.
    BudgetExceeded = 4,
    /// Reading or writing a file failed.
    IoError = 5,
    /// The queried value is absent (e.g. min_q of a scan with no
    /// monochromatic line).
    NoValue = 6,
    /// An internal invariant failed; the library state is unspecified.
    Panic = 7,
}

/// Letter weights over Z_r.
pub struct HjWeights {
    inner: WeightVector,
}

/// A total coloring of [m]^n.
pub struct HjColoring {
    inner: ColoringSpec,
}

/// Outcome of an exhaustive line scan.
pub struct HjReport {
    inner: SearchReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = stored);
}

fn fail(status: HjStatus, message: impl Into<Vec<u8>>) -> HjStatus {
    set_error(message);
    status
}

fn fail_with(err: &Error) -> HjStatus {
    let status = match err {
        Error::BudgetExceeded { .. } => HjStatus::BudgetExceeded,
        Error::Io(_) => HjStatus::IoError,
        Error::BadSymbol { .. } | Error::ColoringFile(_) => HjStatus::ParseError,
        _ => HjStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guarded(f: impl FnOnce() -> HjStatus) -> HjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(HjStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, HjStatus> {
    if ptr.is_null() {
        return Err(fail(HjStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(HjStatus::ParseError, format!("{what} is not valid UTF-8")))
}

fn out_string(value: String, out: *mut *mut c_char) -> HjStatus {
    match CString::new(value) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            HjStatus::Ok
        }
        Err(_) => fail(HjStatus::InvalidArgument, "string contains interior NUL"),
    }
}

fn scan_options(workers: u32, budget: u64) -> ScanOptions {
    let mut options = ScanOptions::default();
    if workers > 0 {
        options.workers = Some(workers as usize);
    }
    if budget > 0 {
        options.budget = budget;
    }
    options
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hj_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread (empty if none). Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hj_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by an hjline function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn hj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a weight vector mod `r` from `t_len` (possibly negative) entries.
///
/// # Safety
/// `t` must point to `t_len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hj_weights_new(
    r: u32,
    t: *const i64,
    t_len: usize,
    out: *mut *mut HjWeights,
) -> HjStatus {
    guarded(|| {
        if t.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "t and out must not be null");
        }
        let entries = std::slice::from_raw_parts(t, t_len);
        match WeightVector::new(r, entries) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HjWeights { inner }));
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// The canonical weights (2, -1, 2) mod an odd r >= 3.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hj_weights_canonical(r: u32, out: *mut *mut HjWeights) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        match canonical_weights(r) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HjWeights { inner }));
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `weights` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hj_weights_free(weights: *mut HjWeights) {
    if !weights.is_null() {
        drop(Box::from_raw(weights));
    }
}

/// Contraction of a word given as ASCII digits ("-" for the empty word).
///
/// # Safety
/// `word` must be a valid NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_word_contract(
    word: *const c_char,
    out: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        let text = match str_arg(word, "word") {
            Ok(text) => text,
            Err(status) => return status,
        };
        match Word::from_text(text, 9) {
            Ok(w) => out_string(w.contract().to_string(), out),
            Err(err) => fail_with(&err),
        }
    })
}

/// The word 1 w 1 for a word given as ASCII digits.
///
/// # Safety
/// `word` must be a valid NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_word_plus_extend(
    word: *const c_char,
    out: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        let text = match str_arg(word, "word") {
            Ok(text) => text,
            Err(status) => return status,
        };
        match Word::from_text(text, 9) {
            Ok(w) => out_string(w.plus_extend().to_string(), out),
            Err(err) => fail_with(&err),
        }
    })
}

/// Color of a word under the weight-chain coloring.
///
/// # Safety
/// `word` must be a valid string, `weights` a live handle, `out_color`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hj_tplus_color(
    word: *const c_char,
    weights: *const HjWeights,
    out_color: *mut u32,
) -> HjStatus {
    guarded(|| {
        if weights.is_null() || out_color.is_null() {
            return fail(HjStatus::NullPointer, "weights and out_color must not be null");
        }
        let text = match str_arg(word, "word") {
            Ok(text) => text,
            Err(status) => return status,
        };
        let weights = &(*weights).inner;
        let parsed = match Word::from_text(text, weights.m()) {
            Ok(word) => word,
            Err(err) => return fail_with(&err),
        };
        match tplus_color(&parsed, weights) {
            Ok(color) => {
                *out_color = color;
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Minimal interval count of a template's wildcard set. The template uses
/// digits plus '*' over alphabet [m].
///
/// # Safety
/// `template` must be a valid string; `out_q` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_template_interval_count(
    template: *const c_char,
    m: u8,
    out_q: *mut u32,
) -> HjStatus {
    guarded(|| {
        if out_q.is_null() {
            return fail(HjStatus::NullPointer, "out_q must not be null");
        }
        let text = match str_arg(template, "template") {
            Ok(text) => text,
            Err(status) => return status,
        };
        match LineTemplate::from_text(text, m) {
            Ok(tpl) => {
                *out_q = interval_count(&tpl.wildcard_set()) as u32;
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

fn new_coloring(out: *mut *mut HjColoring, spec: ColoringSpec) -> HjStatus {
    unsafe { *out = Box::into_raw(Box::new(HjColoring { inner: spec })) };
    HjStatus::Ok
}

/// The weight-chain coloring of [m]^n, m given by the weight count. Takes
/// ownership of nothing; `weights` is copied.
///
/// # Safety
/// `weights` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_tplus(
    n: usize,
    weights: *const HjWeights,
    out: *mut *mut HjColoring,
) -> HjStatus {
    guarded(|| {
        if weights.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "weights and out must not be null");
        }
        new_coloring(out, ColoringSpec::tplus(n, (*weights).inner.clone()))
    })
}

/// The even-r construction: canonical chain at modulus r-1 viewed as an
/// r-coloring.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_even_r(
    r: u32,
    n: usize,
    out: *mut *mut HjColoring,
) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        match hjline::coloring::even_r_coloring(r, n) {
            Ok(spec) => new_coloring(out, spec),
            Err(err) => fail_with(&err),
        }
    })
}

/// A seeded pseudorandom r-coloring of [m]^n.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_random(
    m: u8,
    n: usize,
    r: u32,
    seed: u64,
    out: *mut *mut HjColoring,
) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        match ColoringSpec::random(m, n, r, seed) {
            Ok(spec) => new_coloring(out, spec),
            Err(err) => fail_with(&err),
        }
    })
}

/// Loads a coloring table file (`hjcolor 1 m=<m> n=<n> r=<r>` header).
///
/// # Safety
/// `path` must be a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_load(
    path: *const c_char,
    out: *mut *mut HjColoring,
) -> HjStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HjStatus::NullPointer, "out must not be null");
        }
        let path = match str_arg(path, "path") {
            Ok(path) => path,
            Err(status) => return status,
        };
        match read_coloring_file(Path::new(path)) {
            Ok(spec) => new_coloring(out, spec),
            Err(err) => fail_with(&err),
        }
    })
}

/// Materializes any coloring as a table file.
///
/// # Safety
/// `coloring` must be a live handle; `path` a valid string.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_save(
    coloring: *const HjColoring,
    path: *const c_char,
) -> HjStatus {
    guarded(|| {
        if coloring.is_null() {
            return fail(HjStatus::NullPointer, "coloring must not be null");
        }
        let path = match str_arg(path, "path") {
            Ok(path) => path,
            Err(status) => return status,
        };
        match write_coloring_file(&(*coloring).inner, Path::new(path)) {
            Ok(()) => HjStatus::Ok,
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `coloring` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_free(coloring: *mut HjColoring) {
    if !coloring.is_null() {
        drop(Box::from_raw(coloring));
    }
}

/// # Safety
/// `coloring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_m(coloring: *const HjColoring) -> u8 {
    if coloring.is_null() {
        return 0;
    }
    (*coloring).inner.m()
}

/// # Safety
/// `coloring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_n(coloring: *const HjColoring) -> usize {
    if coloring.is_null() {
        return 0;
    }
    (*coloring).inner.n()
}

/// # Safety
/// `coloring` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_r(coloring: *const HjColoring) -> u32 {
    if coloring.is_null() {
        return 0;
    }
    (*coloring).inner.r()
}

/// Color of one word under a coloring.
///
/// # Safety
/// `coloring` must be a live handle, `word` a valid string, `out_color`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hj_coloring_color(
    coloring: *const HjColoring,
    word: *const c_char,
    out_color: *mut u32,
) -> HjStatus {
    guarded(|| {
        if coloring.is_null() || out_color.is_null() {
            return fail(HjStatus::NullPointer, "coloring and out_color must not be null");
        }
        let spec = &(*coloring).inner;
        let text = match str_arg(word, "word") {
            Ok(text) => text,
            Err(status) => return status,
        };
        let parsed = match Word::from_text(text, spec.m()) {
            Ok(word) => word,
            Err(err) => return fail_with(&err),
        };
        match spec.color(&parsed) {
            Ok(color) => {
                *out_color = color;
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Exhaustive monochromatic-line scan. `workers = 0` uses the available
/// parallelism; `budget = 0` keeps the default cap.
///
/// # Safety
/// `coloring` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_scan(
    coloring: *const HjColoring,
    workers: u32,
    budget: u64,
    out: *mut *mut HjReport,
) -> HjStatus {
    guarded(|| {
        if coloring.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "coloring and out must not be null");
        }
        match scan(&(*coloring).inner, &scan_options(workers, budget)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HjReport { inner }));
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `report` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hj_report_free(report: *mut HjReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_report_templates_scanned(report: *const HjReport) -> u64 {
    if report.is_null() {
        return 0;
    }
    (*report).inner.templates_scanned
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hj_report_monochromatic_count(report: *const HjReport) -> u64 {
    if report.is_null() {
        return 0;
    }
    (*report).inner.monochromatic_count
}

/// Minimum interval count among monochromatic lines;
/// `HJ_STATUS_NO_VALUE` when the scan found none.
///
/// # Safety
/// `report` must be a live handle; `out_q` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_report_min_q(report: *const HjReport, out_q: *mut u32) -> HjStatus {
    guarded(|| {
        if report.is_null() || out_q.is_null() {
            return fail(HjStatus::NullPointer, "report and out_q must not be null");
        }
        match (*report).inner.min_q {
            Some(q) => {
                *out_q = q;
                HjStatus::Ok
            }
            None => HjStatus::NoValue,
        }
    })
}

/// Witness template text; `HJ_STATUS_NO_VALUE` when the scan found no
/// monochromatic line.
///
/// # Safety
/// `report` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_report_witness(
    report: *const HjReport,
    out: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "report and out must not be null");
        }
        match &(*report).inner.witness {
            Some(template) => out_string(template.to_string(), out),
            None => HjStatus::NoValue,
        }
    })
}

/// The report as a JSON document.
///
/// # Safety
/// `report` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_report_json(
    report: *const HjReport,
    out: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "report and out must not be null");
        }
        out_string((*report).inner.to_json().to_string(), out)
    })
}

/// Verifies the interval bound for odd r at dimension n: every
/// monochromatic line of the canonical coloring needs at least r intervals.
/// Writes the verdict and, for a counterexample, its template into
/// `out_witness` (optional; pass NULL to skip).
///
/// # Safety
/// `out_verified` must be writable; `out_witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn hj_verify(
    r: u32,
    n: usize,
    workers: u32,
    out_verified: *mut bool,
    out_witness: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if out_verified.is_null() {
            return fail(HjStatus::NullPointer, "out_verified must not be null");
        }
        match verify_theorem(r, n, &scan_options(workers, 0)) {
            Ok(verdict) => {
                *out_verified = verdict.is_verified();
                if !out_witness.is_null() {
                    *out_witness = std::ptr::null_mut();
                    if let Verdict::Counterexample { template, .. } = &verdict {
                        return out_string(template.to_string(), out_witness);
                    }
                }
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// The even-r companion of [`hj_verify`]: checks the r-1 interval bound.
///
/// # Safety
/// `out_verified` must be writable; `out_witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn hj_verify_even(
    r: u32,
    n: usize,
    workers: u32,
    out_verified: *mut bool,
    out_witness: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if out_verified.is_null() {
            return fail(HjStatus::NullPointer, "out_verified must not be null");
        }
        match verify_even_remark(r, n, &scan_options(workers, 0)) {
            Ok(verdict) => {
                *out_verified = verdict.is_verified();
                if !out_witness.is_null() {
                    *out_witness = std::ptr::null_mut();
                    if let Verdict::Counterexample { template, .. } = &verdict {
                        return out_string(template.to_string(), out_witness);
                    }
                }
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Finds a monochromatic single-interval two-letter line from the colors
/// of the n+1 threshold words; `HJ_STATUS_NO_VALUE` if all colors are
/// distinct.
///
/// # Safety
/// `colors` must point to `len` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hj_pigeonhole_line(
    colors: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> HjStatus {
    guarded(|| {
        if colors.is_null() || out.is_null() {
            return fail(HjStatus::NullPointer, "colors and out must not be null");
        }
        let colors = std::slice::from_raw_parts(colors, len);
        match pigeonhole_line(colors) {
            Ok(template) => out_string(template.to_string(), out),
            Err(Error::NoRepeatedColor { .. }) => HjStatus::NoValue,
            Err(err) => fail_with(&err),
        }
    })
}

/// Brute-force decision whether every r-coloring of [m]^n contains a
/// monochromatic line. `max_cells = 0` keeps the default guard of 16.
///
/// # Safety
/// `out_every` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hj_decide_all_colorings(
    m: u8,
    n: usize,
    r: u32,
    max_cells: u64,
    out_every: *mut bool,
) -> HjStatus {
    guarded(|| {
        if out_every.is_null() {
            return fail(HjStatus::NullPointer, "out_every must not be null");
        }
        let mut options = OracleOptions::default();
        if max_cells > 0 {
            options.max_cells = max_cells;
        }
        match decide_all_colorings(m, n, r, &options) {
            Ok(outcome) => {
                *out_every = outcome.every_coloring_has_line;
                HjStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}
