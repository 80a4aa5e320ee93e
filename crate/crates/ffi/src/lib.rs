//! C ABI for the ntoroidal library.
//!
//! The surface is deliberately small: build or parse a GIM behind an opaque
//! handle, interrogate it, export JSON/DOT, and run a relation-catalog
//! verification that returns its report as a JSON string. Every function
//! returns an `NTOR_*` status code; out-parameters are written only on
//! `NTOR_OK` (except the verify report, which is produced for failing
//! catalogs too so callers can inspect counterexamples). All panics are
//! caught at the boundary and surfaced as `NTOR_ERR_INTERNAL`.
//!
//! Ownership: handles from `ntor_gim_build`/`ntor_gim_parse_json` are freed
//! with `ntor_gim_free`; strings the library allocates are freed with
//! `ntor_string_free`. Passing them to `libc::free` is undefined behavior.

use ntoroidal::gim::{check_gim_axioms, dynkin_diagram, nfold_gim, render_dot, GimMatrix};
use ntoroidal::relcheck::catalog::{catalog_simplified, catalog_toroidal};
use ntoroidal::relcheck::expr::EvalCtx;
use ntoroidal::relcheck::gimcat::catalog_gim;
use ntoroidal::relcheck::verify::{verify_catalog, VerifyOptions};
use ntoroidal::rootdata::{affinize, cartan, Family};
use ntoroidal::vertex::Backend;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

/// Success.
pub const NTOR_OK: i32 = 0;
/// A required pointer argument was null.
pub const NTOR_ERR_NULL: i32 = 1;
/// An input string was not valid UTF-8 or failed to parse.
pub const NTOR_ERR_PARSE: i32 = 2;
/// The requested family/rank/N-fold combination is not supported.
pub const NTOR_ERR_UNSUPPORTED: i32 = 3;
/// The supplied matrix violates the GIM axioms.
pub const NTOR_ERR_AXIOM: i32 = 4;
/// The catalog ran to completion but at least one relation failed.
pub const NTOR_ERR_VERIFY_FAILED: i32 = 5;
/// The truncated basis exceeded the evaluation budget.
pub const NTOR_ERR_BUDGET: i32 = 6;
/// An internal panic was caught at the ABI boundary.
pub const NTOR_ERR_INTERNAL: i32 = 7;

/// Opaque handle to a generalized intersection matrix.
pub struct NtorGim {
    inner: GimMatrix,
}

fn guard<F: FnOnce() -> i32>(f: F) -> i32 {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(NTOR_ERR_INTERNAL)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        return Err(NTOR_ERR_NULL);
    }
    CStr::from_ptr(p).to_str().map_err(|_| NTOR_ERR_PARSE)
}

fn write_string(out: *mut *mut c_char, s: String) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            NTOR_OK
        }
        Err(_) => NTOR_ERR_INTERNAL,
    }
}

fn datum(family: &str, rank: u32) -> Result<ntoroidal::rootdata::AffineDatum, i32> {
    let fam = Family::from_str(family).map_err(|_| NTOR_ERR_PARSE)?;
    let base = cartan(fam, rank as usize).map_err(|_| NTOR_ERR_UNSUPPORTED)?;
    Ok(affinize(&base))
}

/// Build the GIM of N-fold affinization for `family` ("A".."G"), `rank`, and
/// `nfold` ≥ 1. On success `*out` owns a new handle.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_build(
    family: *const c_char,
    rank: u32,
    nfold: u32,
    out: *mut *mut NtorGim,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return NTOR_ERR_NULL;
        }
        let fam = match read_str(family) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let ad = match datum(fam, rank) {
            Ok(ad) => ad,
            Err(e) => return e,
        };
        match nfold_gim(&ad, nfold as usize) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(NtorGim { inner: m }));
                NTOR_OK
            }
            Err(_) => NTOR_ERR_UNSUPPORTED,
        }
    })
}

/// Parse a GIM from its JSON form and validate the axioms. Returns
/// `NTOR_ERR_AXIOM` (without producing a handle) if validation fails.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_parse_json(
    json: *const c_char,
    out: *mut *mut NtorGim,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return NTOR_ERR_NULL;
        }
        let text = match read_str(json) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let m: GimMatrix = match serde_json::from_str(text) {
            Ok(m) => m,
            Err(_) => return NTOR_ERR_PARSE,
        };
        if !check_gim_axioms(&m).violations.is_empty() {
            return NTOR_ERR_AXIOM;
        }
        *out = Box::into_raw(Box::new(NtorGim { inner: m }));
        NTOR_OK
    })
}

/// Side length of the matrix; 0 if the handle is null.
///
/// # Safety
/// `gim` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_size(gim: *const NtorGim) -> u64 {
    if gim.is_null() {
        return 0;
    }
    (*gim).inner.index_set.len() as u64
}

/// Entry at row `i`, column `j` (positional, 0-based). Out of range is
/// `NTOR_ERR_UNSUPPORTED`.
///
/// # Safety
/// `gim` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_entry(
    gim: *const NtorGim,
    i: u64,
    j: u64,
    out: *mut i64,
) -> i32 {
    guard(|| {
        if gim.is_null() || out.is_null() {
            return NTOR_ERR_NULL;
        }
        let m = &(*gim).inner;
        let n = m.index_set.len() as u64;
        if i >= n || j >= n {
            return NTOR_ERR_UNSUPPORTED;
        }
        *out = m.entries[i as usize][j as usize];
        NTOR_OK
    })
}

/// Serialize the matrix as JSON into a library-owned string.
///
/// # Safety
/// `gim` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_to_json(gim: *const NtorGim, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if gim.is_null() || out.is_null() {
            return NTOR_ERR_NULL;
        }
        match serde_json::to_string_pretty(&(*gim).inner) {
            Ok(s) => write_string(out, s),
            Err(_) => NTOR_ERR_INTERNAL,
        }
    })
}

/// Render the Dynkin diagram in Graphviz DOT form.
///
/// # Safety
/// `gim` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_to_dot(gim: *const NtorGim, out: *mut *mut c_char) -> i32 {
    guard(|| {
        if gim.is_null() || out.is_null() {
            return NTOR_ERR_NULL;
        }
        match dynkin_diagram(&(*gim).inner) {
            Ok(g) => write_string(out, render_dot(&g)),
            Err(_) => NTOR_ERR_UNSUPPORTED,
        }
    })
}

/// Verify a relation catalog ("toroidal", "simplified", or "gim") on the
/// truncated level-one Fock module. `budget_cap` 0 means the library default.
/// The JSON report (an array of per-relation objects) is written to
/// `out_report` when non-null, for `NTOR_OK` and `NTOR_ERR_VERIFY_FAILED`
/// alike.
///
/// # Safety
/// `family` and `catalog` must be NUL-terminated strings; `out_report` must
/// be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ntor_verify(
    family: *const c_char,
    rank: u32,
    nfold: u32,
    catalog: *const c_char,
    degree_bound: u32,
    beta_bound: i32,
    budget_cap: u64,
    out_report: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let fam = match read_str(family) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let cat = match read_str(catalog) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let ad = match datum(fam, rank) {
            Ok(ad) => ad,
            Err(e) => return e,
        };
        if nfold < 2 {
            return NTOR_ERR_UNSUPPORTED;
        }
        let specs = match cat {
            "toroidal" => catalog_toroidal(&ad, nfold as usize, (-2, 2)),
            "simplified" => catalog_simplified(&ad, nfold as usize),
            "gim" => catalog_gim(&ad, nfold as usize),
            _ => return NTOR_ERR_PARSE,
        };
        let specs = match specs {
            Ok(s) => s,
            Err(_) => return NTOR_ERR_UNSUPPORTED,
        };
        let backend = Backend::new(ad, nfold as usize);
        let mut opts = VerifyOptions {
            degree_bound,
            beta_bound,
            ..VerifyOptions::default()
        };
        if budget_cap > 0 {
            opts.budget_cap = budget_cap as usize;
        }
        let ctx = EvalCtx::new();
        let reports = verify_catalog(&backend, &ctx, &specs, &opts);
        let status = if reports.iter().any(|r| r.budget_exceeded) {
            NTOR_ERR_BUDGET
        } else if reports.iter().any(|r| !r.pass) {
            NTOR_ERR_VERIFY_FAILED
        } else {
            NTOR_OK
        };
        if !out_report.is_null() {
            match serde_json::to_string_pretty(&reports) {
                Ok(s) => {
                    let rc = write_string(out_report, s);
                    if rc != NTOR_OK {
                        return rc;
                    }
                }
                Err(_) => return NTOR_ERR_INTERNAL,
            }
        }
        status
    })
}

/// Free a handle from `ntor_gim_build`/`ntor_gim_parse_json`. Null is a no-op.
///
/// # Safety
/// `gim` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ntor_gim_free(gim: *mut NtorGim) {
    if !gim.is_null() {
        drop(Box::from_raw(gim));
    }
}

/// Free a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ntor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn build_query_roundtrip() {
        unsafe {
            let fam = cstr("A");
            let mut h: *mut NtorGim = ptr::null_mut();
            assert_eq!(ntor_gim_build(fam.as_ptr(), 2, 2, &mut h), NTOR_OK);
            assert_eq!(ntor_gim_size(h), 4);
            let mut e = 0i64;
            assert_eq!(ntor_gim_entry(h, 0, 1, &mut e), NTOR_OK);
            assert_eq!(e, 2);
            assert_eq!(ntor_gim_entry(h, 9, 0, &mut e), NTOR_ERR_UNSUPPORTED);

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(ntor_gim_to_json(h, &mut json), NTOR_OK);
            let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
            let mut h2: *mut NtorGim = ptr::null_mut();
            let cjson = cstr(&text);
            assert_eq!(ntor_gim_parse_json(cjson.as_ptr(), &mut h2), NTOR_OK);
            assert_eq!(ntor_gim_size(h2), 4);

            let mut dot: *mut c_char = ptr::null_mut();
            assert_eq!(ntor_gim_to_dot(h, &mut dot), NTOR_OK);
            assert!(CStr::from_ptr(dot).to_str().unwrap().contains("graph"));

            ntor_string_free(json);
            ntor_string_free(dot);
            ntor_gim_free(h);
            ntor_gim_free(h2);
        }
    }

    #[test]
    fn error_codes() {
        unsafe {
            let mut h: *mut NtorGim = ptr::null_mut();
            assert_eq!(ntor_gim_build(ptr::null(), 2, 2, &mut h), NTOR_ERR_NULL);
            let bad = cstr("Z");
            assert_eq!(ntor_gim_build(bad.as_ptr(), 2, 2, &mut h), NTOR_ERR_PARSE);
            let fam = cstr("F");
            assert_eq!(
                ntor_gim_build(fam.as_ptr(), 9, 2, &mut h),
                NTOR_ERR_UNSUPPORTED
            );
            // a matrix breaking the sign-symmetry axiom is rejected
            let broken = cstr(
                r#"{"indexSet":[0,1],"entries":[[2,1],[-1,2]],"symmetrizer":[1,1]}"#,
            );
            assert_eq!(
                ntor_gim_parse_json(broken.as_ptr(), &mut h),
                NTOR_ERR_AXIOM
            );
        }
    }

    #[test]
    fn verify_smoke() {
        unsafe {
            let fam = cstr("A");
            let cat = cstr("simplified");
            let mut report: *mut c_char = ptr::null_mut();
            let rc = ntor_verify(fam.as_ptr(), 1, 2, cat.as_ptr(), 0, 0, 0, &mut report);
            assert_eq!(rc, NTOR_OK);
            let text = CStr::from_ptr(report).to_str().unwrap();
            assert!(text.contains("\"pass\": true"));
            ntor_string_free(report);

            let b = cstr("B");
            let tor = cstr("toroidal");
            assert_eq!(
                ntor_verify(b.as_ptr(), 3, 2, tor.as_ptr(), 0, 0, 0, ptr::null_mut()),
                NTOR_ERR_UNSUPPORTED
            );
        }
    }
}
