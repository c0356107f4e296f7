//! C ABI for the zerogen engine, certificate checker and analysis functions.
//!
//! Every fallible function returns a [`ZgStatus`]; on failure the message is
//! available from [`zg_last_error_message`] on the same thread. Objects handed
//! out as pointers are owned by the caller and released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Duration;

use zerogen::analysis::{lambert_w, phi_real, varphi_int, DEFAULT_TOL};
use zerogen::certificates::{cert_from_json, cert_to_json, decide_certified, load_cert, verify, Certificate};
use zerogen::{decide, Budget, DecideOptions, Error, NatVec, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Schema = 4,
    Io = 5,
    Domain = 6,
    Budget = 7,
    Numeric = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZgVerdict {
    Generating = 0,
    NotGenerating = 1,
    BudgetExceeded = 2,
}

/// Opaque certificate handle.
pub struct ZgCertificate {
    cert: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ZgStatus {
    match e {
        Error::Parse(_) => ZgStatus::Parse,
        Error::Schema(_) => ZgStatus::Schema,
        Error::Io(_) => ZgStatus::Io,
        Error::Budget(_) => ZgStatus::Budget,
        Error::Numeric(_) => ZgStatus::Numeric,
        _ => ZgStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (ZgStatus, String)>) -> ZgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZgStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ZgStatus::Panic
        }
    }
}

fn lift(e: Error) -> (ZgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ZgStatus, String) {
    (ZgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ZgStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (ZgStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_vector(entries: *const u64, n: usize) -> Result<NatVec, (ZgStatus, String)> {
    if entries.is_null() {
        return Err(null("entries"));
    }
    NatVec::new(std::slice::from_raw_parts(entries, n).to_vec()).map_err(lift)
}

fn options(max_tuples: u64, max_seconds: u64) -> DecideOptions {
    let mut b = Budget::default();
    if max_tuples > 0 {
        b.max_tuples = max_tuples;
    }
    if max_seconds > 0 {
        b.max_time = Duration::from_secs(max_seconds);
    }
    DecideOptions { budget: b, ..DecideOptions::default() }
}

fn verdict_code(v: &Verdict) -> ZgVerdict {
    match v {
        Verdict::Generating { .. } => ZgVerdict::Generating,
        Verdict::NotGenerating { .. } => ZgVerdict::NotGenerating,
        Verdict::BudgetExceeded { .. } => ZgVerdict::BudgetExceeded,
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(std::ptr::null_mut())
}

/// Decide the vector `entries[0..n]`. Zero budgets select the defaults.
///
/// # Safety
/// `entries` must point to `n` readable values and `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zg_decide(
    entries: *const u64,
    n: usize,
    max_tuples: u64,
    max_seconds: u64,
    out_verdict: *mut ZgVerdict,
) -> ZgStatus {
    guard(|| {
        if out_verdict.is_null() {
            return Err(null("out_verdict"));
        }
        let h = read_vector(entries, n)?;
        let v = decide(&h, &options(max_tuples, max_seconds)).map_err(lift)?;
        *out_verdict = verdict_code(&v);
        Ok(())
    })
}

/// Like [`zg_decide`], also returning a checked certificate (null on budget exhaustion).
///
/// # Safety
/// As for [`zg_decide`]; `out_cert` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zg_decide_certified(
    entries: *const u64,
    n: usize,
    max_tuples: u64,
    max_seconds: u64,
    out_verdict: *mut ZgVerdict,
    out_cert: *mut *mut ZgCertificate,
) -> ZgStatus {
    guard(|| {
        if out_verdict.is_null() || out_cert.is_null() {
            return Err(null("output pointer"));
        }
        let h = read_vector(entries, n)?;
        let (v, c) = decide_certified(&h, &options(max_tuples, max_seconds)).map_err(lift)?;
        *out_verdict = verdict_code(&v);
        *out_cert = match c {
            Some(cert) => Box::into_raw(Box::new(ZgCertificate { cert })),
            None => std::ptr::null_mut(),
        };
        Ok(())
    })
}

/// Load a certificate file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zg_cert_load(path: *const c_char, out: *mut *mut ZgCertificate) -> ZgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = read_str(path, "path")?;
        let cert = load_cert(Path::new(p)).map_err(lift)?;
        *out = Box::into_raw(Box::new(ZgCertificate { cert }));
        Ok(())
    })
}

/// Parse a certificate from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zg_cert_from_json(json: *const c_char, out: *mut *mut ZgCertificate) -> ZgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let cert = cert_from_json(text).map_err(lift)?;
        *out = Box::into_raw(Box::new(ZgCertificate { cert }));
        Ok(())
    })
}

/// Check a certificate. `out_passed` is set to 1 on pass and 0 on failure;
/// `out_proves_generating` (optional) tells which outcome a pass establishes.
///
/// # Safety
/// `cert` must come from this library; the outputs must be writable or null where optional.
#[no_mangle]
pub unsafe extern "C" fn zg_cert_verify(
    cert: *const ZgCertificate,
    out_passed: *mut i32,
    out_proves_generating: *mut i32,
) -> ZgStatus {
    guard(|| {
        if cert.is_null() || out_passed.is_null() {
            return Err(null("argument"));
        }
        let c = &(*cert).cert;
        let rep = verify(c);
        *out_passed = rep.passed as i32;
        if !out_proves_generating.is_null() {
            *out_proves_generating = c.proves_generating() as i32;
        }
        if !rep.passed {
            set_error(&rep.to_string());
        }
        Ok(())
    })
}

/// Serialize a certificate; free the result with [`zg_string_free`].
///
/// # Safety
/// `cert` must come from this library and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn zg_cert_to_json(cert: *const ZgCertificate, out: *mut *mut c_char) -> ZgStatus {
    guard(|| {
        if cert.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        *out = to_c_string(cert_to_json(&(*cert).cert));
        Ok(())
    })
}

/// Dimension of the certified vector.
///
/// # Safety
/// `cert` must come from this library or be null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn zg_cert_dim(cert: *const ZgCertificate) -> usize {
    if cert.is_null() {
        0
    } else {
        (*cert).cert.n()
    }
}

/// # Safety
/// `cert` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zg_cert_free(cert: *mut ZgCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `s` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `φ(n)` as a decimal string; free with [`zg_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zg_varphi(n: usize, out: *mut *mut c_char) -> ZgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(varphi_int(n).value.to_string());
        Ok(())
    })
}

/// `ϕ(n)` and the maximizing `x`.
///
/// # Safety
/// `out_value` must be writable; `out_x` may be null.
#[no_mangle]
pub unsafe extern "C" fn zg_phi_real(n: usize, out_value: *mut f64, out_x: *mut f64) -> ZgStatus {
    guard(|| {
        if out_value.is_null() {
            return Err(null("out_value"));
        }
        let p = phi_real(n, DEFAULT_TOL).map_err(lift)?;
        *out_value = p.value;
        if !out_x.is_null() {
            *out_x = p.x_star;
        }
        Ok(())
    })
}

/// Principal branch of Lambert W for `x ≥ 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zg_lambert_w(x: f64, out: *mut f64) -> ZgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lambert_w(x, 1e-16).map_err(lift)?;
        Ok(())
    })
}

/// Message for the last failure on this thread (empty after a success, or the
/// failure report after a certificate check that did not pass).
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn zg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
