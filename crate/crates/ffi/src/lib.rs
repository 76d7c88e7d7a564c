// SPDX-License-Identifier: Apache-2.0
//! C ABI over the axlab workbench.
//!
//! Algebras cross the boundary as opaque `AxlabAlgebra` handles; reports and documents as
//! NUL-terminated UTF-8 JSON strings owned by the library and released with `axlab_string_free`.
//! Every call returns an `AxlabStatus`; on failure `axlab_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use axlab::catalog::{construct, FamilyId, FamilyParams};
use axlab::classify::{classify, Verdict};
use axlab::cli::classify_report;
use axlab::doc::{AlgebraDocument, Loaded};
use axlab::field::{parse_scalar, Field};
use axlab::verify::{verify, VerifyOptions};
use axlab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidParams = 4,
    VerificationFailed = 5,
    UnknownAlgebra = 6,
    Internal = 7,
}

/// An algebra with its two axes and fusion parameters.
pub struct AxlabAlgebra {
    inner: Loaded,
    doc: AlgebraDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: AxlabStatus, msg: impl Into<String>) -> AxlabStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> AxlabStatus {
    match e {
        Error::InvalidParams(_) => AxlabStatus::InvalidParams,
        Error::Parse(_) | Error::Document(_) | Error::InvalidField(_) | Error::NotInField(_) | Error::DuplicateEntry(..) => {
            AxlabStatus::ParseError
        }
        _ => AxlabStatus::VerificationFailed,
    }
}

fn guarded(f: impl FnOnce() -> AxlabStatus) -> AxlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == AxlabStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(AxlabStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `p` is NULL or a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, AxlabStatus> {
    if p.is_null() {
        return Err(fail(AxlabStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(AxlabStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> AxlabStatus {
    if out.is_null() {
        return fail(AxlabStatus::NullPointer, "null output pointer");
    }
    *out = CString::new(s).expect("JSON has no NUL").into_raw();
    AxlabStatus::Ok
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn write_handle(out: *mut *mut AxlabAlgebra, alg: AxlabAlgebra) -> AxlabStatus {
    if out.is_null() {
        return fail(AxlabStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(alg));
    AxlabStatus::Ok
}

/// Parses an algebra document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_algebra_from_json(json: *const c_char, out: *mut *mut AxlabAlgebra) -> AxlabStatus {
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let loaded = AlgebraDocument::from_json(text).and_then(|doc| doc.load().map(|l| (doc, l)));
        match loaded {
            Ok((doc, inner)) => write_handle(out, AxlabAlgebra { inner, doc }),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Builds a catalog algebra. `params_json` is NULL or an object such as {"xi": "1/4", "n": "3"};
/// `field` is NULL for ℚ or a descriptor such as "fp:11" or "qsqrt:97".
///
/// # Safety
/// String arguments are NULL (where allowed) or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_construct(
    family: *const c_char,
    params_json: *const c_char,
    field: *const c_char,
    out: *mut *mut AxlabAlgebra,
) -> AxlabStatus {
    guarded(|| {
        let fam = match read_str(family) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let f: Field = if field.is_null() {
            Field::Rationals
        } else {
            match read_str(field).map(str::parse::<Field>) {
                Ok(Ok(f)) => f,
                Ok(Err(e)) => return fail(AxlabStatus::ParseError, e.to_string()),
                Err(s) => return s,
            }
        };
        let id: FamilyId = match fam.parse() {
            Ok(id) => id,
            Err(e) => return fail(AxlabStatus::ParseError, Error::to_string(&e)),
        };
        let mut params = FamilyParams::none();
        if !params_json.is_null() {
            let text = match read_str(params_json) {
                Ok(t) => t,
                Err(s) => return s,
            };
            let map: std::collections::BTreeMap<String, String> = match serde_json::from_str(text) {
                Ok(m) => m,
                Err(e) => return fail(AxlabStatus::ParseError, e.to_string()),
            };
            for (k, v) in map {
                let r = match k.as_str() {
                    "xi" => parse_scalar(&v, f).map(|s| params.xi = Some(s)),
                    "eta" => parse_scalar(&v, f).map(|s| params.eta = Some(s)),
                    "alpha" => parse_scalar(&v, f).map(|s| params.alpha = Some(s)),
                    "mu" => parse_scalar(&v, f).map(|s| params.mu = Some(s)),
                    "n" => v.parse().map(|n| params.n = Some(n)).map_err(|_| Error::Parse(v.clone())),
                    other => Err(Error::Parse(format!("unknown parameter {other:?}"))),
                };
                if let Err(e) = r {
                    return fail(AxlabStatus::ParseError, e.to_string());
                }
            }
        }
        match construct(id, &params, f) {
            Ok(inst) => {
                let doc = AlgebraDocument::from_instance(&inst);
                match doc.load() {
                    Ok(inner) => write_handle(out, AxlabAlgebra { inner, doc }),
                    Err(e) => fail(AxlabStatus::Internal, e.to_string()),
                }
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a handle; NULL is ignored.
///
/// # Safety
/// `alg` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn axlab_algebra_free(alg: *mut AxlabAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_algebra_dim(alg: *const AxlabAlgebra, out: *mut usize) -> AxlabStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(AxlabStatus::NullPointer, "null argument");
        }
        *out = (*alg).inner.algebra.dim();
        AxlabStatus::Ok
    })
}

/// The algebra document as JSON.
///
/// # Safety
/// `alg` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_algebra_to_json(alg: *const AxlabAlgebra, out: *mut *mut c_char) -> AxlabStatus {
    guarded(|| {
        if alg.is_null() {
            return fail(AxlabStatus::NullPointer, "null handle");
        }
        write_string(out, (*alg).doc.to_json())
    })
}

/// Runs every check; the report is written even when a check fails (status VerificationFailed).
///
/// # Safety
/// `alg` is a live handle; `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_verify(alg: *const AxlabAlgebra, report: *mut *mut c_char) -> AxlabStatus {
    guarded(|| {
        if alg.is_null() {
            return fail(AxlabStatus::NullPointer, "null handle");
        }
        let l = &(*alg).inner;
        let opts = VerifyOptions::default();
        let rep = verify(&l.algebra, &l.a0, &l.a1, &l.params, &opts);
        let s = write_string(report, serde_json::to_string(&rep).expect("report serializes"));
        if s != AxlabStatus::Ok {
            return s;
        }
        if rep.passed {
            AxlabStatus::Ok
        } else {
            fail(AxlabStatus::VerificationFailed, "a check failed; see the report")
        }
    })
}

/// Classifies the algebra; UnknownAlgebra still writes the report.
///
/// # Safety
/// `alg` is a live handle; `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn axlab_classify(alg: *const AxlabAlgebra, report: *mut *mut c_char) -> AxlabStatus {
    guarded(|| {
        if alg.is_null() {
            return fail(AxlabStatus::NullPointer, "null handle");
        }
        let l = &(*alg).inner;
        match classify(&l.algebra, &l.a0, &l.a1, &l.params) {
            Ok((inv, m)) => {
                let s = write_string(report, classify_report(&inv, &m).to_string());
                if s != AxlabStatus::Ok {
                    return s;
                }
                if matches!(m.verdict, Verdict::Unknown(_)) {
                    fail(AxlabStatus::UnknownAlgebra, "no table row verified")
                } else {
                    AxlabStatus::Ok
                }
            }
            Err(e) => fail(AxlabStatus::VerificationFailed, e.to_string()),
        }
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn axlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread; empty after a success. Valid until the next call.
#[no_mangle]
pub extern "C" fn axlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The library version, a static string.
#[no_mangle]
pub extern "C" fn axlab_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
