//! C ABI over the qcert verifier.
//!
//! Every function returns a [`QcertStatus`] (or a pointer that is null on
//! error). The message for the most recent error on the calling thread is
//! available from [`qcert_last_error_message`]. Strings returned by this
//! library are owned by the caller and released with [`qcert_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcert::certs::{certify, CertifyOptions};
use qcert::cli::{Item, Report, RunConfig};
use qcert::identities::{eval_sides, verify, VerifyOptions};
use qcert::psers::{check_series, SeriesOptions};
use qcert::qcore::{ParamPoint, QRational};
use qcert::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcertStatus {
    Ok = 0,
    /// The check ran and found a counterexample, or the sides differ.
    CheckFailed = 1,
    /// A sampled or given point sits on a pole.
    Pole = 2,
    InvalidArgument = 3,
    UnknownId = 4,
    CostGuard = 5,
    Parse = 6,
    NullPointer = 7,
    /// A panic was caught at the boundary.
    Internal = 8,
}

/// A parameter point: rational symbols and integer indices.
pub struct QcertPoint(ParamPoint);

/// The report of one verify, certify or series run.
pub struct QcertReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> QcertStatus {
    match e {
        Error::Pole { .. } | Error::DivisionByZero | Error::DegenerateQ(_) => QcertStatus::Pole,
        Error::UnknownIdentity(_) | Error::UnknownProof(_) | Error::UnknownSeries(_) => QcertStatus::UnknownId,
        Error::CostGuard(_) | Error::NonTerminatingExponent { .. } => QcertStatus::CostGuard,
        Error::Parse(_) => QcertStatus::Parse,
        Error::CounterexampleFound { .. } | Error::CheckFailed(_) | Error::RetryExhausted { .. } => QcertStatus::CheckFailed,
        Error::MissingSymbol(_) | Error::MissingIndex(_) | Error::Config(_) => QcertStatus::InvalidArgument,
    }
}

fn fail(e: Error) -> QcertStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<QcertStatus, Error>) -> QcertStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic");
            QcertStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error::Config(format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Error::Parse(format!("{what} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(concat!(stringify!($p), " is null"));
            return QcertStatus::NullPointer;
        })+
    };
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn qcert_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the last error message on this thread, or null if none.
/// Free with [`qcert_string_free`].
#[no_mangle]
pub extern "C" fn qcert_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A new empty point. Free with [`qcert_point_free`].
#[no_mangle]
pub extern "C" fn qcert_point_new() -> *mut QcertPoint {
    Box::into_raw(Box::new(QcertPoint(ParamPoint::new())))
}

/// Parses `name=value,...` into a new point stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_point_parse(text: *const c_char, out: *mut *mut QcertPoint) -> QcertStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| {
        let p: ParamPoint = str_arg(text, "text")?.parse()?;
        *out = Box::into_raw(Box::new(QcertPoint(p)));
        Ok(QcertStatus::Ok)
    })
}

/// Sets a rational symbol from text such as `-3/7`.
///
/// # Safety
/// `point` must be a live handle; `name` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn qcert_point_set_symbol(point: *mut QcertPoint, name: *const c_char, value: *const c_char) -> QcertStatus {
    non_null!(point);
    guard(|| {
        let v: QRational = str_arg(value, "value")?.parse()?;
        (*point).0.set(str_arg(name, "name")?, v);
        Ok(QcertStatus::Ok)
    })
}

/// Sets an integer index.
///
/// # Safety
/// `point` must be a live handle; `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qcert_point_set_index(point: *mut QcertPoint, name: *const c_char, value: i64) -> QcertStatus {
    non_null!(point);
    guard(|| {
        (*point).0.set_index(str_arg(name, "name")?, value);
        Ok(QcertStatus::Ok)
    })
}

/// The point as `name=value,...`. Free with [`qcert_string_free`].
///
/// # Safety
/// `point` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qcert_point_to_string(point: *const QcertPoint) -> *mut c_char {
    if point.is_null() {
        set_error("point is null");
        return ptr::null_mut();
    }
    out_string((*point).0.to_string())
}

/// # Safety
/// `point` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcert_point_free(point: *mut QcertPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

/// Evaluates both sides of identity `id` at `point`. On success `*lhs` and
/// `*rhs` hold exact fractions; the status is `CheckFailed` when they differ.
///
/// # Safety
/// `id` must be NUL-terminated, `point` a live handle, `lhs`/`rhs` writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_eval_sides(
    id: *const c_char,
    point: *const QcertPoint,
    lhs: *mut *mut c_char,
    rhs: *mut *mut c_char,
) -> QcertStatus {
    non_null!(point, lhs, rhs);
    *lhs = ptr::null_mut();
    *rhs = ptr::null_mut();
    guard(|| {
        let (l, r) = eval_sides(str_arg(id, "id")?, &(*point).0)?;
        let equal = l == r;
        *lhs = out_string(l.to_string());
        *rhs = out_string(r.to_string());
        if equal {
            Ok(QcertStatus::Ok)
        } else {
            set_error("lhs != rhs");
            Ok(QcertStatus::CheckFailed)
        }
    })
}

/// As [`qcert_eval_sides`] with the point given as `name=value,...`.
///
/// # Safety
/// `id` and `point` must be NUL-terminated; `lhs`/`rhs` writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_eval_sides_str(
    id: *const c_char,
    point: *const c_char,
    lhs: *mut *mut c_char,
    rhs: *mut *mut c_char,
) -> QcertStatus {
    non_null!(lhs, rhs);
    *lhs = ptr::null_mut();
    *rhs = ptr::null_mut();
    let mut handle: *mut QcertPoint = ptr::null_mut();
    let s = qcert_point_parse(point, &mut handle);
    if s != QcertStatus::Ok {
        return s;
    }
    let s = qcert_eval_sides(id, handle, lhs, rhs);
    qcert_point_free(handle);
    s
}

fn base_config(command: &str, trials: u64, seed: u64) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        identities: Vec::new(),
        proofs: Vec::new(),
        series: Vec::new(),
        trials: (trials > 0).then_some(trials),
        seed,
        n_max: None,
        m_max: None,
        r_max: None,
        order: qcert::psers::DEFAULT_ORDER,
        max_abs: qcert::identities::sampling::DEFAULT_MAX_ABS,
        mutate_rhs: false,
        progress: false,
    }
}

unsafe fn finish(report: Report, out: *mut *mut QcertReport) -> QcertStatus {
    let passed = report.summary.all_passed;
    *out = Box::into_raw(Box::new(QcertReport { report }));
    if passed {
        QcertStatus::Ok
    } else {
        set_error("check failed; see the report");
        QcertStatus::CheckFailed
    }
}

/// Verifies identity `id`. `trials = 0` uses the default. The report is
/// stored in `*out` whenever the run completes, including on `CheckFailed`.
///
/// # Safety
/// `id` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_verify(id: *const c_char, trials: u64, seed: u64, out: *mut *mut QcertReport) -> QcertStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| {
        let id = str_arg(id, "id")?;
        let mut cfg = base_config("verify", trials, seed);
        cfg.identities.push(id.to_string());
        let opts: VerifyOptions = cfg.verify_options();
        let item = Item::from_verification(verify(id, &opts)?);
        Ok(finish(Report::new(cfg, vec![item], 0), out))
    })
}

/// Replays proof certificate `id` with levels up to `n_max` (0 for the default).
///
/// # Safety
/// `id` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_certify(id: *const c_char, trials: u64, seed: u64, n_max: i64, out: *mut *mut QcertReport) -> QcertStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| {
        let id = str_arg(id, "id")?;
        let mut cfg = base_config("certify", trials, seed);
        cfg.proofs.push(id.to_string());
        if n_max > 0 {
            cfg.n_max = Some(n_max);
        }
        let opts: CertifyOptions = cfg.certify_options();
        let item = Item::from_certificate(certify(id, &opts)?);
        Ok(finish(Report::new(cfg, vec![item], 0), out))
    })
}

/// Checks series identity `id` to order `order` (0 for the default).
///
/// # Safety
/// `id` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcert_series(id: *const c_char, order: u32, trials: u64, seed: u64, out: *mut *mut QcertReport) -> QcertStatus {
    non_null!(out);
    *out = ptr::null_mut();
    guard(|| {
        let id = str_arg(id, "id")?;
        let mut cfg = base_config("series", trials, seed);
        cfg.series.push(id.to_string());
        if order > 0 {
            cfg.order = order as usize;
        }
        let opts: SeriesOptions = cfg.series_options();
        let item = Item::from_series(check_series(id, &opts)?);
        Ok(finish(Report::new(cfg, vec![item], 0), out))
    })
}

/// 1 if every item in the report passed, 0 otherwise (or for null).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qcert_report_passed(report: *const QcertReport) -> c_int {
    if report.is_null() {
        return 0;
    }
    c_int::from((*report).report.summary.all_passed)
}

/// The report as JSON. Free with [`qcert_string_free`].
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qcert_report_json(report: *const QcertReport) -> *mut c_char {
    if report.is_null() {
        set_error("report is null");
        return ptr::null_mut();
    }
    out_string((*report).report.to_json())
}

/// # Safety
/// `report` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcert_report_free(report: *mut QcertReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
