//! C ABI for soleknot.
//!
//! Objects are opaque handles created by `*_parse` or derived from other
//! handles and released with the matching `*_free`. Every fallible call
//! returns a [`SoleknotStatus`]; on failure a message is available from
//! [`soleknot_last_error`] until the next failing call on the same thread.
//! Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with [`soleknot_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use soleknot::braid::Braid;
use soleknot::freegroup::Word;
use soleknot::knotgrp::{
    abelianize, alexander_polynomial, sphere_closure_presentation, Presentation,
};
use soleknot::satellite::satellite_presentation;
use soleknot::solenoid::{solenoids_equivalent, validate_sequence, WindingSeq};
use soleknot::torusgrp::TorusContext;
use soleknot::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SoleknotStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// Inputs are well formed but outside the operation's domain.
    DomainError = 4,
    NotAKnot = 5,
    /// A word length or enumeration budget was exceeded.
    LimitExceeded = 6,
    Internal = 7,
}

/// Braid word with its strand count.
pub struct SoleknotBraid(Braid);

/// Group presentation, optionally with a meridian and longitude.
pub struct SoleknotPresentation(Presentation);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SoleknotClosureInfo {
    pub components: usize,
    pub winding: usize,
    pub exponent_sum: i64,
    pub is_knot: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SoleknotStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => SoleknotStatus::ParseError,
            Error::NotAKnot { .. } => SoleknotStatus::NotAKnot,
            Error::WordTooLong { .. } | Error::BudgetExceeded { .. } => {
                SoleknotStatus::LimitExceeded
            }
            _ => SoleknotStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `f`, converting failures and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SoleknotStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SoleknotStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            SoleknotStatus::Internal
        }
    }
}

fn null() -> Failure {
    Failure(SoleknotStatus::NullArgument, "null pointer argument".into())
}

/// # Safety
/// `p` must be null or a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SoleknotStatus::InvalidUtf8, "input is not UTF-8".into()))
}

/// # Safety
/// `p` must be null or a live handle.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// Boxes `value` into `*out`; nothing is allocated when `out` is null.
///
/// # Safety
/// `out` must be null or writable.
unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    put(out, Box::into_raw(Box::new(value)))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s)
        .map_err(|_| Failure(SoleknotStatus::Internal, "interior NUL in output".into()))?;
    put(out, c.into_raw())
}

/// Message for the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn soleknot_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned through a `char **` out-parameter
/// of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn soleknot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `n: s1 S2 ..`.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_braid_parse(
    input: *const c_char,
    out: *mut *mut SoleknotBraid,
) -> SoleknotStatus {
    guard(|| {
        let b: Braid = text(input)?.trim().parse()?;
        put_handle(out, SoleknotBraid(b))
    })
}

/// # Safety
/// `b` must be null or a braid handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn soleknot_braid_free(b: *mut SoleknotBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_braid_to_string(
    b: *const SoleknotBraid,
    out: *mut *mut c_char,
) -> SoleknotStatus {
    guard(|| put_string(out, handle(b)?.0.to_string()))
}

/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_braid_closure_info(
    b: *const SoleknotBraid,
    out: *mut SoleknotClosureInfo,
) -> SoleknotStatus {
    guard(|| {
        let info = handle(b)?.0.closure_info();
        put(
            out,
            SoleknotClosureInfo {
                components: info.components,
                winding: info.winding,
                exponent_sum: info.exponent_sum,
                is_knot: info.is_knot,
            },
        )
    })
}

/// Applies the Artin action of `b^power` to `word` (`x1 X2 ..`); the image
/// is written to `out`. Words longer than `max_word_len` are refused.
///
/// # Safety
/// `b` must be a live braid handle, `word` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_braid_act(
    b: *const SoleknotBraid,
    word: *const c_char,
    power: i64,
    max_word_len: usize,
    out: *mut *mut c_char,
) -> SoleknotStatus {
    guard(|| {
        let b = &handle(b)?.0;
        let w: Word = text(word)?.trim().parse()?;
        let image = TorusContext::with_limit(b, max_word_len).apply_power(power, &w)?;
        put_string(out, image.to_string())
    })
}

/// Parses the line format (`gens: ..`, `rel: ..`, `meridian: ..`,
/// `longitude: ..`; lines may also be separated by `;`).
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_parse(
    input: *const c_char,
    out: *mut *mut SoleknotPresentation,
) -> SoleknotStatus {
    guard(|| {
        let p: Presentation = text(input)?.parse()?;
        put_handle(out, SoleknotPresentation(p))
    })
}

/// Complement of the closure of `b` in the 3-sphere, with its peripheral
/// pair.
///
/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_sphere_closure(
    b: *const SoleknotBraid,
    out: *mut *mut SoleknotPresentation,
) -> SoleknotStatus {
    guard(|| {
        let p = sphere_closure_presentation(&handle(b)?.0)?;
        put_handle(out, SoleknotPresentation(p))
    })
}

/// Satellite of `companion` with pattern `b`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_satellite(
    companion: *const SoleknotPresentation,
    b: *const SoleknotBraid,
    out: *mut *mut SoleknotPresentation,
) -> SoleknotStatus {
    guard(|| {
        let p = satellite_presentation(&handle(companion)?.0, &handle(b)?.0)?;
        put_handle(out, SoleknotPresentation(p))
    })
}

/// # Safety
/// `p` must be null or a presentation handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_free(p: *mut SoleknotPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live presentation handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_to_string(
    p: *const SoleknotPresentation,
    out: *mut *mut c_char,
) -> SoleknotStatus {
    guard(|| put_string(out, handle(p)?.0.to_string()))
}

/// First homology, e.g. `Z` or `Z/2 + Z`.
///
/// # Safety
/// `p` must be a live presentation handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_abelianize(
    p: *const SoleknotPresentation,
    out: *mut *mut c_char,
) -> SoleknotStatus {
    guard(|| put_string(out, abelianize(&handle(p)?.0).to_string()))
}

/// Normalized Alexander polynomial, e.g. `t^2 - t + 1`.
///
/// # Safety
/// `p` must be a live presentation handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_presentation_alexander(
    p: *const SoleknotPresentation,
    out: *mut *mut c_char,
) -> SoleknotStatus {
    guard(|| {
        let d = alexander_polynomial(&handle(p)?.0)?;
        put_string(out, d.to_string())
    })
}

/// Whether the solenoids of two winding sequences (`pre: .. | per: ..`)
/// are homeomorphic.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn soleknot_solenoids_equivalent(
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> SoleknotStatus {
    guard(|| {
        let parse = |p| -> Result<WindingSeq, Failure> {
            let s: WindingSeq = text(p)?.trim().parse()?;
            match validate_sequence(&s).into_iter().next() {
                Some(e) => Err(e.into()),
                None => Ok(s),
            }
        };
        let eq = solenoids_equivalent(&parse(a)?, &parse(b)?)?;
        put(out, eq)
    })
}
