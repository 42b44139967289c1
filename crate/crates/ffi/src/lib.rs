//! C ABI over the `heckeps` core.
//!
//! Objects are opaque handles created by `*_new` and released by `*_free`.
//! Every fallible call returns a [`HeckepsStatus`]; on failure the message
//! is available from [`heckeps_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heckeps::gfunc::{floor_g, parse_g, AdmissibleG};
use heckeps::hecke::{build_tau_table, TauTable};
use heckeps::typesums::{main_theorem_experiment, ExperimentOptions};
use heckeps::vaaler::{build_vaaler, VaalerApprox};
use heckeps::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckepsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    OutOfRange = 3,
    TableUnderflow = 4,
    Overflow = 5,
    Numeric = 6,
    BufferTooSmall = 7,
    Io = 8,
    Panic = 9,
}

/// Exact τ table with its normalized eigenvalues.
pub struct HeckepsTauTable(TauTable);

/// Admissible growth function `g`.
pub struct HeckepsG(AdmissibleG);

/// Vaaler approximation `ψ*` and majorant `δ` of order `J`.
pub struct HeckepsVaaler(VaalerApprox);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HeckepsRunRecord {
    pub n: u64,
    pub hits: u64,
    pub a: f64,
    pub majorant: f64,
    pub quotient: f64,
    pub envelope: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

fn status_of(error: &Error) -> HeckepsStatus {
    match error {
        Error::InvalidParameter { .. } | Error::Config(_) | Error::Constraint { .. } => HeckepsStatus::InvalidParameter,
        Error::OutOfRange { .. } | Error::PrimalityRange { .. } => HeckepsStatus::OutOfRange,
        Error::TableUnderflow { .. } => HeckepsStatus::TableUnderflow,
        Error::Overflow { .. } => HeckepsStatus::Overflow,
        Error::Io { .. } | Error::Csv(_) | Error::Json(_) | Error::Cache(_) => HeckepsStatus::Io,
        _ => HeckepsStatus::Numeric,
    }
}

fn guard(body: impl FnOnce() -> Result<(), (HeckepsStatus, String)>) -> HeckepsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HeckepsStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HeckepsStatus::Panic
        }
    }
}

fn fail(e: Error) -> (HeckepsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HeckepsStatus, String) {
    (HeckepsStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, (HeckepsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), (HeckepsStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn heckeps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn heckeps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds τ(1..=limit).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_new(limit: u64, out: *mut *mut HeckepsTauTable) -> HeckepsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = build_tau_table(limit).map_err(fail)?;
        out.write(Box::into_raw(Box::new(HeckepsTauTable(table))));
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle from [`heckeps_tau_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_free(table: *mut HeckepsTauTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_limit(table: *const HeckepsTauTable, out: *mut u64) -> HeckepsStatus {
    guard(|| put(out, get(table, "table")?.0.limit(), "out"))
}

fn checked_index(table: &TauTable, n: u64) -> Result<(), (HeckepsStatus, String)> {
    if n == 0 || n > table.limit() {
        return Err(fail(Error::OutOfRange { index: n, limit: table.limit() }));
    }
    Ok(())
}

/// τ(n) when it fits in 64 bits; [`HeckepsStatus::Overflow`] otherwise.
///
/// # Safety
/// `table` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_tau_i64(
    table: *const HeckepsTauTable,
    n: u64,
    out: *mut i64,
) -> HeckepsStatus {
    guard(|| {
        let t = &get(table, "table")?.0;
        checked_index(t, n)?;
        let v = i64::try_from(t.tau(n)).map_err(|_| fail(Error::Overflow { n }))?;
        put(out, v, "out")
    })
}

/// τ(n) as a NUL-terminated decimal string. `written` receives the length
/// without the NUL; when `capacity` is too small it receives the required
/// length and [`HeckepsStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `table` must be a live handle, `buffer` valid for `capacity` bytes and
/// `written` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_tau_string(
    table: *const HeckepsTauTable,
    n: u64,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> HeckepsStatus {
    guard(|| {
        let t = &get(table, "table")?.0;
        checked_index(t, n)?;
        let text = t.tau(n).to_string();
        put(written, text.len(), "written")?;
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        if capacity <= text.len() {
            return Err((HeckepsStatus::BufferTooSmall, format!("need {} bytes", text.len() + 1)));
        }
        ptr::copy_nonoverlapping(text.as_ptr().cast(), buffer, text.len());
        buffer.add(text.len()).write(0);
        Ok(())
    })
}

/// λ(n) = τ(n) / n^{11/2}.
///
/// # Safety
/// `table` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_tau_table_lambda(
    table: *const HeckepsTauTable,
    n: u64,
    out: *mut f64,
) -> HeckepsStatus {
    guard(|| {
        let t = &get(table, "table")?.0;
        checked_index(t, n)?;
        put(out, t.lambda(n), "out")
    })
}

/// Parses `identity`, `power:<c>` or `xexp-sqrtlog`.
///
/// # Safety
/// `selector` must be a NUL-terminated string; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_g_parse(selector: *const c_char, out: *mut *mut HeckepsG) -> HeckepsStatus {
    guard(|| {
        if selector.is_null() {
            return Err(null("selector"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(selector)
            .to_str()
            .map_err(|_| (HeckepsStatus::InvalidParameter, "selector is not UTF-8".to_string()))?;
        let g = parse_g(text).map_err(fail)?;
        out.write(Box::into_raw(Box::new(HeckepsG(g))));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from [`heckeps_g_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heckeps_g_free(g: *mut HeckepsG) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `g(x)` in double precision.
///
/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_g_eval(g: *const HeckepsG, x: f64, out: *mut f64) -> HeckepsStatus {
    guard(|| put(out, get(g, "g")?.0.g(x), "out"))
}

/// Certified `[g(n)]`.
///
/// # Safety
/// `g` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_g_floor(g: *const HeckepsG, n: u64, out: *mut u64) -> HeckepsStatus {
    guard(|| {
        let m = floor_g(&get(g, "g")?.0, n).map_err(fail)?;
        put(out, m, "out")
    })
}

/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_vaaler_new(j: usize, out: *mut *mut HeckepsVaaler) -> HeckepsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = build_vaaler(j).map_err(fail)?;
        out.write(Box::into_raw(Box::new(HeckepsVaaler(v))));
        Ok(())
    })
}

/// # Safety
/// `v` must be null or a handle from [`heckeps_vaaler_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heckeps_vaaler_free(v: *mut HeckepsVaaler) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// `ψ*(x)` and `δ(x)`.
///
/// # Safety
/// `v` must be a live handle; `psi_star` and `delta` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heckeps_vaaler_eval(
    v: *const HeckepsVaaler,
    x: f64,
    psi_star: *mut f64,
    delta: *mut f64,
) -> HeckepsStatus {
    guard(|| {
        let (p, d) = get(v, "v")?.0.eval(x);
        put(psi_star, p, "psi_star")?;
        put(delta, d, "delta")
    })
}

/// `A(N) = Σ λ([g(n)])` over `n <= N` with `[g(n)]` prime, with the
/// majorant, quotient and envelope `N exp(-C sqrt(log N))`.
///
/// # Safety
/// `g` and `table` must be live handles; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn heckeps_main_sum(
    g: *const HeckepsG,
    table: *const HeckepsTauTable,
    n: u64,
    c: f64,
    out: *mut HeckepsRunRecord,
) -> HeckepsStatus {
    guard(|| {
        let (g, table) = (&get(g, "g")?.0, &get(table, "table")?.0);
        let options = ExperimentOptions { c, timing: false };
        let r = main_theorem_experiment(g, &[n], table, options).map_err(fail)?.remove(0);
        let record = HeckepsRunRecord {
            n: r.n,
            hits: r.hits,
            a: r.a,
            majorant: r.majorant,
            quotient: r.quotient,
            envelope: r.envelope,
        };
        put(out, record, "out")
    })
}
