//! C ABI over the `qsuff` core.
//!
//! States and channels are opaque handles created from JSON documents or raw
//! row-major arrays and released with the matching `_free` function. Every
//! fallible call returns a [`QsuffStatus`]; on failure the message is
//! available from [`qsuff_last_error`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::size_t;
use num_complex::Complex64;
use qsuff::cli::documents::{
    channel_document, choi_document, parse_channel, parse_state, state_document,
};
use qsuff::cli::output::to_json;
use qsuff::cli::CliError;
use qsuff::divergences::{relative_entropy_integral, relative_entropy_spectral, QuadratureSpec};
use qsuff::hypothesis::{default_grid, optimal_bayes_error, DEFAULT_GRID_POINTS};
use qsuff::linalg::ComplexMatrix;
use qsuff::quantum::{apply_channel, DensityMatrix, QuantumChannel};
use qsuff::recovery::{
    rotated_petz, sufficiency_report, universal_recovery, Verdict, DEFAULT_T_SAMPLES,
};
use qsuff::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsuffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    QuadratureBudget = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsuffVerdict {
    Sufficient = 0,
    Borderline = 1,
    NotSufficient = 2,
}

/// Opaque density matrix.
pub struct QsuffState(DensityMatrix);

/// Opaque quantum channel.
pub struct QsuffChannel(QuantumChannel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(QsuffStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::QuadratureBudgetExceeded { .. } => QsuffStatus::QuadratureBudget,
            _ => QsuffStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Core(inner) => inner.into(),
            other => Failure(QsuffStatus::Parse, other.to_string()),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QsuffStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QsuffStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsuffStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QsuffStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QsuffStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_value<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(QsuffStatus::Validation, "output contains NUL".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = c.into_raw();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qsuff_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qsuff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn qsuff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a state document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_state_from_json(
    json: *const c_char,
    out: *mut *mut QsuffState,
) -> QsuffStatus {
    guard(|| store(out, QsuffState(parse_state(text(json, "json")?)?)))
}

/// Builds a state from row-major real and imaginary parts of length `dim²`.
///
/// # Safety
/// `re` and `im` must point to `dim * dim` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_state_new(
    dim: size_t,
    re: *const f64,
    im: *const f64,
    out: *mut *mut QsuffState,
) -> QsuffStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("matrix data"));
        }
        let n = dim
            .checked_mul(dim)
            .ok_or_else(|| Failure(QsuffStatus::Validation, "dimension overflow".into()))?;
        let re = std::slice::from_raw_parts(re, n);
        let im = std::slice::from_raw_parts(im, n);
        let data = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        let m = ComplexMatrix::new(dim, dim, data)?;
        store(out, QsuffState(DensityMatrix::new(m)?))
    })
}

/// # Safety
/// `state` must be null or a handle from this library not freed yet.
#[no_mangle]
pub unsafe extern "C" fn qsuff_state_free(state: *mut QsuffState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Dimension of a state, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn qsuff_state_dim(state: *const QsuffState) -> size_t {
    state.as_ref().map_or(0, |s| s.0.dim())
}

/// Serializes a state as a JSON document; release with [`qsuff_string_free`].
///
/// # Safety
/// `state` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_state_to_json(
    state: *const QsuffState,
    out: *mut *mut c_char,
) -> QsuffStatus {
    guard(|| store_string(out, to_json(&state_document(&handle(state, "state")?.0))))
}

/// Parses a channel document (Kraus or Choi form).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_channel_from_json(
    json: *const c_char,
    out: *mut *mut QsuffChannel,
) -> QsuffStatus {
    guard(|| store(out, QsuffChannel(parse_channel(text(json, "json")?)?)))
}

/// # Safety
/// `channel` must be null or a handle from this library not freed yet.
#[no_mangle]
pub unsafe extern "C" fn qsuff_channel_free(channel: *mut QsuffChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Serializes a channel as a Kraus-form JSON document.
///
/// # Safety
/// `channel` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_channel_to_json(
    channel: *const QsuffChannel,
    out: *mut *mut c_char,
) -> QsuffStatus {
    guard(|| {
        store_string(
            out,
            to_json(&channel_document(&handle(channel, "channel")?.0)),
        )
    })
}

/// `Φ(ρ)` as a new state handle.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_apply_channel(
    channel: *const QsuffChannel,
    state: *const QsuffState,
    out: *mut *mut QsuffState,
) -> QsuffStatus {
    guard(|| {
        let image = apply_channel(&handle(channel, "channel")?.0, &handle(state, "state")?.0)?;
        store(out, QsuffState(image))
    })
}

/// Relative entropy in nats by the spectral route; `+∞` when the support
/// condition fails.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_relative_entropy(
    rho: *const QsuffState,
    sigma: *const QsuffState,
    out: *mut f64,
) -> QsuffStatus {
    guard(|| {
        store_value(
            out,
            relative_entropy_spectral(&handle(rho, "rho")?.0, &handle(sigma, "sigma")?.0)?,
        )
    })
}

/// Relative entropy by the integral route with adaptive Simpson quadrature.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_relative_entropy_integral(
    rho: *const QsuffState,
    sigma: *const QsuffState,
    rel_tol: f64,
    max_nodes: size_t,
    out: *mut f64,
) -> QsuffStatus {
    guard(|| {
        let spec = QuadratureSpec {
            rel_tol,
            max_nodes,
            ..QuadratureSpec::default()
        };
        let est =
            relative_entropy_integral(&handle(rho, "rho")?.0, &handle(sigma, "sigma")?.0, &spec)?;
        store_value(out, est.value)
    })
}

/// Minimal Bayes error for prior `λ` on `σ`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_optimal_bayes_error(
    rho: *const QsuffState,
    sigma: *const QsuffState,
    lambda: f64,
    out: *mut f64,
) -> QsuffStatus {
    guard(|| {
        store_value(
            out,
            optimal_bayes_error(&handle(rho, "rho")?.0, &handle(sigma, "sigma")?.0, lambda)?,
        )
    })
}

/// Rotated Petz recovery channel at `t` (`t = 0` is the Petz map).
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_petz_recovery(
    channel: *const QsuffChannel,
    sigma: *const QsuffState,
    t: f64,
    out: *mut *mut QsuffChannel,
) -> QsuffStatus {
    guard(|| {
        let map = rotated_petz(
            &handle(channel, "channel")?.0,
            &handle(sigma, "sigma")?.0,
            t,
        )?;
        store(out, QsuffChannel(map.channel().clone()))
    })
}

/// Universal recovery channel averaged over `[−truncation, truncation]` with
/// `nodes` Simpson nodes.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_universal_recovery(
    channel: *const QsuffChannel,
    sigma: *const QsuffState,
    truncation: f64,
    nodes: size_t,
    out: *mut *mut QsuffChannel,
) -> QsuffStatus {
    guard(|| {
        let uni = universal_recovery(
            &handle(channel, "channel")?.0,
            &handle(sigma, "sigma")?.0,
            truncation,
            nodes,
        )?;
        store(out, QsuffChannel(uni.to_channel()?))
    })
}

/// Choi-form JSON of the universal recovery channel.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_universal_recovery_json(
    channel: *const QsuffChannel,
    sigma: *const QsuffState,
    truncation: f64,
    nodes: size_t,
    out: *mut *mut c_char,
) -> QsuffStatus {
    guard(|| {
        let uni = universal_recovery(
            &handle(channel, "channel")?.0,
            &handle(sigma, "sigma")?.0,
            truncation,
            nodes,
        )?;
        store_string(out, to_json(&choi_document(uni.choi())))
    })
}

/// Sufficiency verdict on the default grid and time samples, with the
/// largest residual behind it.
///
/// # Safety
/// Handles must be valid; `verdict` and `worst_residual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qsuff_sufficiency(
    rho: *const QsuffState,
    sigma: *const QsuffState,
    channel: *const QsuffChannel,
    threshold: f64,
    verdict: *mut QsuffVerdict,
    worst_residual: *mut f64,
) -> QsuffStatus {
    guard(|| {
        let (rho, sigma) = (&handle(rho, "rho")?.0, &handle(sigma, "sigma")?.0);
        let grid = default_grid(rho, sigma, DEFAULT_GRID_POINTS)?;
        let report = sufficiency_report(
            rho,
            sigma,
            &handle(channel, "channel")?.0,
            &grid,
            &DEFAULT_T_SAMPLES,
            threshold,
        )?;
        let v = match report.verdict {
            Verdict::Sufficient => QsuffVerdict::Sufficient,
            Verdict::Borderline => QsuffVerdict::Borderline,
            Verdict::NotSufficient => QsuffVerdict::NotSufficient,
        };
        store_value(verdict, v)?;
        store_value(worst_residual, report.worst_residual())
    })
}
