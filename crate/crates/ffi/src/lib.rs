//! C interface to `starlab-core`.
//!
//! Every fallible call returns a [`StarlabStatus`] whose values match the command-line
//! exit codes; on anything other than `STARLAB_STATUS_OK` a message is available from
//! [`starlab_last_error`] on the same thread. Handles are opaque and owned by the caller,
//! who releases them with the matching `_free` function. Strings returned through `out`
//! parameters are released with [`starlab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use starlab_core::cli::exit_code;
use starlab_core::fq::Field;
use starlab_core::kunz::{self, KunzReport, RunContext};
use starlab_core::numsgp::NumericalSemigroup;
use starlab_core::ring::RingModel;
use starlab_core::star::StarEngine;
use starlab_core::{Budget, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarlabStatus {
    Ok = 0,
    /// A verification ran and at least one verdict failed, or an internal check failed.
    Failed = 1,
    BadInput = 2,
    Budget = 3,
    Gate = 4,
    NullPointer = 5,
    Panic = 6,
}

pub struct StarlabSemigroup(NumericalSemigroup);

pub struct StarlabField(Field);

/// A ring model with its lattice, orbits and closure table.
pub struct StarlabEngine(StarEngine);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> StarlabStatus {
    match exit_code(err) {
        2 => StarlabStatus::BadInput,
        3 => StarlabStatus::Budget,
        4 => StarlabStatus::Gate,
        _ => StarlabStatus::Failed,
    }
}

fn guard<F: FnOnce() -> Result<StarlabStatus, (StarlabStatus, String)>>(f: F) -> StarlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside starlab");
            StarlabStatus::Panic
        }
    }
}

fn core<T>(r: starlab_core::Result<T>) -> Result<T, (StarlabStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), (StarlabStatus, String)> {
    if p.is_null() {
        Err((StarlabStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn report_out(r: &KunzReport, out_json: *mut *mut c_char) -> Result<StarlabStatus, (StarlabStatus, String)> {
    let json = CString::new(r.to_json()).map_err(|e| (StarlabStatus::Failed, e.to_string()))?;
    unsafe { *out_json = json.into_raw() };
    Ok(if r.any_failed() {
        StarlabStatus::Failed
    } else if r.any_skipped() {
        StarlabStatus::Budget
    } else {
        StarlabStatus::Ok
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn starlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a successful call. Valid
/// until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn starlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn starlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `gens` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_new(gens: *const u32, len: usize, out: *mut *mut StarlabSemigroup) -> StarlabStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(gens, "gens")?;
        let slice = std::slice::from_raw_parts(gens, len);
        let s = core(NumericalSemigroup::from_generators(slice))?;
        *out = Box::into_raw(Box::new(StarlabSemigroup(s)));
        Ok(StarlabStatus::Ok)
    })
}

/// `⟨n, n+1, ..., 2n-3, 2n-1⟩`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_kunz_family(n: u32, out: *mut *mut StarlabSemigroup) -> StarlabStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = core(NumericalSemigroup::kunz_family(n))?;
        *out = Box::into_raw(Box::new(StarlabSemigroup(s)));
        Ok(StarlabStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_free(s: *mut StarlabSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Frobenius number, or -1 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_frobenius(s: *const StarlabSemigroup) -> i64 {
    s.as_ref().map_or(-1, |s| s.0.frobenius() as i64)
}

/// Number of gaps, or -1 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_genus(s: *const StarlabSemigroup) -> i64 {
    s.as_ref().map_or(-1, |s| s.0.genus() as i64)
}

/// Field of order `q` with the default modulus.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_field_new(q: u32, out: *mut *mut StarlabField) -> StarlabStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = core(Field::with_order(q))?;
        *out = Box::into_raw(Box::new(StarlabField(f)));
        Ok(StarlabStatus::Ok)
    })
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_field_free(f: *mut StarlabField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Builds `F_0`, unit orbits and the closure table for `K[[S]]` under default budgets.
///
/// # Safety
/// `s` and `f` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_engine_new(
    s: *const StarlabSemigroup,
    f: *const StarlabField,
    out: *mut *mut StarlabEngine,
) -> StarlabStatus {
    guard(|| {
        non_null(s, "semigroup")?;
        non_null(f, "field")?;
        non_null(out, "out")?;
        let model = RingModel::semigroup_ring(&(*s).0, &(*f).0);
        let e = core(StarEngine::new(model, &Budget::default()))?;
        *out = Box::into_raw(Box::new(StarlabEngine(e)));
        Ok(StarlabStatus::Ok)
    })
}

/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_engine_free(e: *mut StarlabEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `|F_0(R)|`, or -1 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_engine_ideal_count(e: *const StarlabEngine) -> i64 {
    e.as_ref().map_or(-1, |e| e.0.lattice().len() as i64)
}

/// Number of unit orbits in `F_0(R)`, or -1 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn starlab_engine_orbit_count(e: *const StarlabEngine) -> i64 {
    e.as_ref().map_or(-1, |e| e.0.orbits().len() as i64)
}

/// `|Star(R)|`.
///
/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_engine_count_stars(e: *const StarlabEngine, out: *mut u64) -> StarlabStatus {
    guard(|| {
        non_null(e, "engine")?;
        non_null(out, "out")?;
        let stars = core((*e).0.enumerate_stars(&Budget::default()))?;
        *out = stars.len() as u64;
        Ok(StarlabStatus::Ok)
    })
}

/// Runs the counterexample verification and writes the JSON report to `out_json`. The
/// status reflects the verdicts as for the command line.
///
/// # Safety
/// `s` and `f` must be live handles and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_kunz_counterexample(
    s: *const StarlabSemigroup,
    f: *const StarlabField,
    out_json: *mut *mut c_char,
) -> StarlabStatus {
    guard(|| {
        non_null(s, "semigroup")?;
        non_null(f, "field")?;
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let r = core(kunz::verify_counterexample(&(*s).0, &(*f).0, &RunContext::default()))?;
        report_out(&r, out_json)
    })
}

/// Lower-bound certificate for `⟨n, ..., 2n-3, 2n-1⟩`, as a JSON report.
///
/// # Safety
/// `f` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_kunz_lower_bound(n: u32, f: *const StarlabField, out_json: *mut *mut c_char) -> StarlabStatus {
    guard(|| {
        non_null(f, "field")?;
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let r = core(kunz::lower_bound(n, &(*f).0, &RunContext::default()))?;
        report_out(&r, out_json)
    })
}

/// Parses comma-separated generators, as accepted by the command line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn starlab_semigroup_parse(text: *const c_char, out: *mut *mut StarlabSemigroup) -> StarlabStatus {
    guard(|| {
        non_null(text, "text")?;
        non_null(out, "out")?;
        let s = CStr::from_ptr(text).to_str().map_err(|e| (StarlabStatus::BadInput, e.to_string()))?;
        let gens = core(starlab_core::numsgp::parse_generators(s))?;
        let sg = core(NumericalSemigroup::from_generators(&gens))?;
        *out = Box::into_raw(Box::new(StarlabSemigroup(sg)));
        Ok(StarlabStatus::Ok)
    })
}
