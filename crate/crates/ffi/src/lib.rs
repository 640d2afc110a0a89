//! C interface to the seqlab norm engines.
//!
//! Vectors and engines are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`SeqlabStatus`]; on failure the message is available from
//! [`seqlab_last_error`] on the same thread until the next failing call.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use seqlab::decomp::{lambda_sequence, prefix_gap, subset_gap, subset_sup};
use seqlab::norms::{engine_from_id, envelope_norm, NormEngine};
use seqlab::seqvec::parse_vector;
use seqlab::{Error, SparseVec};

/// Status codes; the numbering follows the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqlabStatus {
    Ok = 0,
    /// Unknown engine id, or the engine lacks a required property.
    BadEngine = 2,
    /// Malformed input: bad index, duplicate, non-finite value, bad text.
    Parse = 3,
    /// Support too large for an exhaustive search.
    SizeLimit = 4,
    /// Any other unmet precondition.
    Precondition = 5,
    NullArgument = 6,
    /// A panic was caught; the handle arguments may be in an unspecified state.
    Internal = 7,
}

/// Engine property bits returned by [`seqlab_engine_flags`].
pub const SEQLAB_FLAG_SYMMETRIC: u32 = 1;
pub const SEQLAB_FLAG_UNCONDITIONAL: u32 = 2;
pub const SEQLAB_FLAG_LATTICE: u32 = 4;

/// A finite-support vector under construction. Indices must be pushed in
/// strictly increasing order.
pub struct SeqlabVector {
    pairs: Vec<(usize, f64)>,
}

impl SeqlabVector {
    fn build(&self) -> Result<SparseVec, Error> {
        SparseVec::from_pairs(self.pairs.iter().copied())
    }
}

pub struct SeqlabEngine {
    inner: Box<dyn NormEngine>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SeqlabStatus {
    match e {
        Error::UnknownEngine(_)
        | Error::FlagsUnmet { .. }
        | Error::InvalidOrlicz(_)
        | Error::InvalidExponents(_)
        | Error::InvalidBlocks(_) => SeqlabStatus::BadEngine,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidIndex(_)
        | Error::DuplicateIndex(_)
        | Error::NonFinite { .. } => SeqlabStatus::Parse,
        Error::SupportTooLarge { .. } => SeqlabStatus::SizeLimit,
        _ => SeqlabStatus::Precondition,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, recording any error or panic.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SeqlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SeqlabStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed as `{what}`"));
            SeqlabStatus::NullArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SeqlabStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::Parse { line: 0, message: format!("`{what}` is not UTF-8") }))
}

/// Message of the last failure on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn seqlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn seqlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// A new empty vector. Never null.
#[no_mangle]
pub extern "C" fn seqlab_vector_new() -> *mut SeqlabVector {
    Box::into_raw(Box::new(SeqlabVector { pairs: Vec::new() }))
}

/// Parses the text format (`index:value` per line, `#` comments) into a new
/// vector stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqlab_vector_parse(text: *const c_char, out: *mut *mut SeqlabVector) -> SeqlabStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let x = parse_vector(c_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(SeqlabVector { pairs: x.iter().collect() }));
        Ok(())
    })
}

/// Appends `value` at `index`. Indices start at 1 and must increase; zero
/// values are accepted and ignored.
///
/// # Safety
/// `v` must come from [`seqlab_vector_new`] or [`seqlab_vector_parse`].
#[no_mangle]
pub unsafe extern "C" fn seqlab_vector_push(v: *mut SeqlabVector, index: usize, value: f64) -> SeqlabStatus {
    guard(|| {
        let v = deref_mut(v, "v")?;
        if index == 0 {
            return Err(Error::InvalidIndex(0).into());
        }
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value }.into());
        }
        if let Some(&(last, _)) = v.pairs.last() {
            if index == last {
                return Err(Error::DuplicateIndex(index).into());
            }
            if index < last {
                return Err(Error::Parse { line: 0, message: format!("index {index} pushed after {last}") }.into());
            }
        }
        if value != 0.0 {
            v.pairs.push((index, value));
        }
        Ok(())
    })
}

/// Number of nonzero coordinates; 0 for null.
///
/// # Safety
/// `v` must be null or a live vector handle.
#[no_mangle]
pub unsafe extern "C" fn seqlab_vector_len(v: *const SeqlabVector) -> usize {
    v.as_ref().map_or(0, |v| v.pairs.len())
}

/// # Safety
/// `v` must be null or a live vector handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn seqlab_vector_free(v: *mut SeqlabVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Resolves an engine id such as `day`, `c0`, `orlicz:default` or
/// `nakano:linear` into `*out`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn seqlab_engine_new(id: *const c_char, out: *mut *mut SeqlabEngine) -> SeqlabStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        let inner = engine_from_id(c_str(id, "id")?)?;
        *out = Box::into_raw(Box::new(SeqlabEngine { inner }));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a live engine handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn seqlab_engine_free(e: *mut SeqlabEngine) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Combination of the `SEQLAB_FLAG_*` bits; 0 for null.
///
/// # Safety
/// `e` must be null or a live engine handle.
#[no_mangle]
pub unsafe extern "C" fn seqlab_engine_flags(e: *const SeqlabEngine) -> u32 {
    e.as_ref().map_or(0, |e| {
        let f = e.inner.flags();
        let bit = |on: bool, b: u32| if on { b } else { 0 };
        bit(f.symmetric, SEQLAB_FLAG_SYMMETRIC)
            | bit(f.one_unconditional, SEQLAB_FLAG_UNCONDITIONAL)
            | bit(f.lattice_monotone, SEQLAB_FLAG_LATTICE)
    })
}

/// Writes the canonical engine name (NUL-terminated, truncated to fit)
/// into `buf` of `len` bytes and returns the full name length.
///
/// # Safety
/// `e` must be a live engine handle; `buf` must hold `len` bytes or be null.
#[no_mangle]
pub unsafe extern "C" fn seqlab_engine_name(e: *const SeqlabEngine, buf: *mut c_char, len: usize) -> usize {
    let Some(e) = e.as_ref() else { return 0 };
    let name = e.inner.name();
    if !buf.is_null() && len > 0 {
        let n = name.len().min(len - 1);
        ptr::copy_nonoverlapping(name.as_ptr().cast(), buf, n);
        *buf.add(n) = 0;
    }
    name.len()
}

unsafe fn with_pair<F>(e: *const SeqlabEngine, v: *const SeqlabVector, out: *mut f64, f: F) -> SeqlabStatus
where
    F: FnOnce(&dyn NormEngine, &SparseVec) -> Result<f64, Error>,
{
    guard(|| {
        let e = deref(e, "engine")?;
        let x = deref(v, "vector")?.build()?;
        let out = deref_mut(out, "out")?;
        *out = f(e.inner.as_ref(), &x)?;
        Ok(())
    })
}

/// `‖x‖`.
///
/// # Safety
/// Live handles and a valid `out`.
#[no_mangle]
pub unsafe extern "C" fn seqlab_norm(e: *const SeqlabEngine, v: *const SeqlabVector, out: *mut f64) -> SeqlabStatus {
    with_pair(e, v, out, |e, x| Ok(e.eval(x)))
}

/// `sup` over sign changes of `x`; supports of at most 20 points.
///
/// # Safety
/// Live handles and a valid `out`.
#[no_mangle]
pub unsafe extern "C" fn seqlab_envelope_norm(
    e: *const SeqlabEngine,
    v: *const SeqlabVector,
    out: *mut f64,
) -> SeqlabStatus {
    with_pair(e, v, out, envelope_norm)
}

/// `sup_{|A| <= n} ‖P_A x‖`.
///
/// # Safety
/// Live handles and a valid `out`.
#[no_mangle]
pub unsafe extern "C" fn seqlab_subset_sup(
    e: *const SeqlabEngine,
    v: *const SeqlabVector,
    n: usize,
    out: *mut f64,
) -> SeqlabStatus {
    with_pair(e, v, out, |e, x| subset_sup(e, x, n))
}

/// `‖x‖ - sup_{|A| <= n} ‖P_A x‖`.
///
/// # Safety
/// Live handles and a valid `out`.
#[no_mangle]
pub unsafe extern "C" fn seqlab_subset_gap(
    e: *const SeqlabEngine,
    v: *const SeqlabVector,
    n: usize,
    out: *mut f64,
) -> SeqlabStatus {
    with_pair(e, v, out, |e, x| subset_gap(e, x, n))
}

/// `‖x‖ - ‖P_{1..n} x‖`.
///
/// # Safety
/// Live handles and a valid `out`.
#[no_mangle]
pub unsafe extern "C" fn seqlab_prefix_gap(
    e: *const SeqlabEngine,
    v: *const SeqlabVector,
    n: usize,
    out: *mut f64,
) -> SeqlabStatus {
    with_pair(e, v, out, |e, x| Ok(prefix_gap(e, x, n)))
}

/// Fills `out[0..n_max]` with `λ_1, .., λ_{n_max}`.
///
/// # Safety
/// `e` must be a live handle and `out` must hold `n_max` doubles.
#[no_mangle]
pub unsafe extern "C" fn seqlab_lambda(e: *const SeqlabEngine, n_max: usize, out: *mut f64) -> SeqlabStatus {
    guard(|| {
        let e = deref(e, "engine")?;
        if out.is_null() && n_max > 0 {
            return Err(Failure::Null("out"));
        }
        let values = lambda_sequence(e.inner.as_ref(), n_max)?;
        if n_max > 0 {
            std::slice::from_raw_parts_mut(out, n_max).copy_from_slice(&values);
        }
        Ok(())
    })
}
