//! C ABI over `gradlie`.
//!
//! Every function returns a [`GlStatus`]; results go through out-pointers.
//! On failure, [`gl_last_error`] returns a message for the calling thread.
//! Strings handed out by this library must be released with
//! [`gl_string_free`], algebras with [`gl_algebra_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use gradlie::format::{self, FormatError};
use gradlie::freelie::{self, GradedAlphabet};
use gradlie::liealg::GradedLieAlgebra;
use gradlie::pbw;
use gradlie::unigroup;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unreadable file or malformed input text.
    Parse = 3,
    /// Input parsed but is not a graded Lie algebra.
    Invalid = 4,
    /// The requested computation rejected its arguments.
    Compute = 5,
    Panic = 6,
}

/// Opaque handle to a validated graded Lie algebra.
pub struct GlAlgebra {
    inner: GradedLieAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GlStatus, msg: impl Into<String>) -> GlStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> GlStatus) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GlStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, GlStatus> {
    if p.is_null() {
        return Err(fail(GlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(GlStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn alg_arg<'a>(p: *const GlAlgebra) -> Result<&'a GradedLieAlgebra, GlStatus> {
    p.as_ref()
        .map(|a| &a.inner)
        .ok_or_else(|| fail(GlStatus::NullPointer, "null algebra handle"))
}

fn format_status(e: &FormatError) -> GlStatus {
    match e {
        FormatError::Invalid { .. } => GlStatus::Invalid,
        _ => GlStatus::Parse,
    }
}

unsafe fn write_out<T>(out: *mut T, v: T) -> GlStatus {
    if out.is_null() {
        return fail(GlStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    GlStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failure on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Loads and validates an algebra definition file.
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_from_file(
    path: *const c_char,
    out: *mut *mut GlAlgebra,
) -> GlStatus {
    guard(|| {
        let path = tri!(str_arg(path));
        match format::parse_algebra(Path::new(path)) {
            Ok(f) => write_out(out, Box::into_raw(Box::new(GlAlgebra { inner: f.algebra }))),
            Err(e) => fail(format_status(&e), e.to_string()),
        }
    })
}

/// Parses and validates algebra definition text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_from_str(
    text: *const c_char,
    out: *mut *mut GlAlgebra,
) -> GlStatus {
    guard(|| {
        let text = tri!(str_arg(text));
        let file = match format::algebra_from_str(text, Path::new("<string>")) {
            Ok(f) => f,
            Err(e) => return fail(format_status(&e), e.to_string()),
        };
        let report = file.algebra.validate();
        if !report.passed() {
            let e = FormatError::Invalid {
                path: "<string>".into(),
                report,
            };
            return fail(GlStatus::Invalid, e.to_string());
        }
        write_out(
            out,
            Box::into_raw(Box::new(GlAlgebra {
                inner: file.algebra,
            })),
        )
    })
}

/// Releases an algebra. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_free(alg: *mut GlAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_algebra_dim(alg: *const GlAlgebra, out: *mut usize) -> GlStatus {
    guard(|| write_out(out, tri!(alg_arg(alg)).dim()))
}

/// Straightens a word of basis names (space separated) and writes the
/// normal form, e.g. `1 * e f + -1 * h`.
///
/// # Safety
/// `alg` must be a live handle, `word` a nul-terminated string, `out`
/// writable. The result must be released with [`gl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gl_normalize(
    alg: *const GlAlgebra,
    word: *const c_char,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        let alg = tri!(alg_arg(alg));
        let word = tri!(str_arg(word));
        let letters = match pbw::parse_word(alg, word) {
            Ok(l) => l,
            Err(e) => return fail(GlStatus::Parse, e.to_string()),
        };
        match pbw::normalize_word(alg, &letters) {
            Ok(x) => {
                let s =
                    CString::new(pbw::format_su(alg, &x)).expect("rendered forms contain no nul");
                write_out(out, s.into_raw())
            }
            Err(e) => fail(GlStatus::Compute, e.to_string()),
        }
    })
}

/// Number of graded PBW monomials of length at most `max_len`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_pbw_basis_count(
    alg: *const GlAlgebra,
    max_len: usize,
    out: *mut usize,
) -> GlStatus {
    guard(|| {
        let alg = tri!(alg_arg(alg));
        match pbw::pbw_basis(alg, max_len) {
            Ok(b) => write_out(out, b.len()),
            Err(e) => fail(GlStatus::Compute, e.to_string()),
        }
    })
}

/// Whether the support has pairwise distinct images in the
/// abelianized universal group.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_is_abelian(alg: *const GlAlgebra, out: *mut bool) -> GlStatus {
    guard(|| {
        let alg = tri!(alg_arg(alg));
        match unigroup::is_abelian_grading(alg) {
            Ok(v) => write_out(out, v.abelian),
            Err(e) => fail(GlStatus::Compute, e.to_string()),
        }
    })
}

/// Runs the graded Witt check on the basis letters up to `max_len`.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_witt_check(
    alg: *const GlAlgebra,
    max_len: usize,
    out: *mut bool,
) -> GlStatus {
    guard(|| {
        let alg = tri!(alg_arg(alg));
        match freelie::witt_check(&GradedAlphabet::from_algebra(alg), max_len) {
            Ok(r) => write_out(out, r.passed()),
            Err(e) => fail(GlStatus::Compute, e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
