//! C ABI for `exgl`.
//!
//! A context owns a ring, a degree and an ideal. Matrices, words and results
//! cross the boundary as JSON strings in the same format the CLI uses, and
//! indices are 1-based. Every function returns an [`ExglStatus`]; on failure
//! [`exgl_last_error`] describes the error on the calling thread. Strings
//! returned through `out` parameters are owned by the caller and must be
//! released with [`exgl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use exgl::factor::{factor_congruence_commutator, factor_conjugated_transvection};
use exgl::group::{Gl, InvertibleMatrix, Matrix};
use exgl::harness::{run_suite, SuiteConfig};
use exgl::ring::parse_ring_spec;
use exgl::witness::{classify, extract_diagonal, extract_entry};
use exgl::{Elem, Error, Ideal};
use serde_json::json;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExglStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Argument = 3,
    Precondition = 4,
    Unsupported = 5,
    Capacity = 6,
    NotInvertible = 7,
    Parse = 8,
    Usage = 9,
    Sampling = 10,
    Invariant = 11,
    Io = 12,
    Panic = 13,
}

impl From<&Error> for ExglStatus {
    fn from(e: &Error) -> ExglStatus {
        match e {
            Error::Argument(_) | Error::Axiom(_) => ExglStatus::Argument,
            Error::Precondition(_) => ExglStatus::Precondition,
            Error::Unsupported(_) | Error::NotExchange(_) => ExglStatus::Unsupported,
            Error::Capacity { .. } => ExglStatus::Capacity,
            Error::NotInvertible => ExglStatus::NotInvertible,
            Error::Parse(_) | Error::Json(_) => ExglStatus::Parse,
            Error::Usage(_) => ExglStatus::Usage,
            Error::Sampling(_) => ExglStatus::Sampling,
            Error::Invariant(_) => ExglStatus::Invariant,
            Error::Io(_) => ExglStatus::Io,
        }
    }
}

/// A ring, degree and ideal. Create with [`exgl_context_new`].
pub struct ExglContext {
    gl: Gl,
    ideal: Ideal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ExglStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(ExglStatus::from(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure(ExglStatus::Parse, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, maps errors and panics to a status and records the message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ExglStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ExglStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside exgl".into());
            ExglStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(ExglStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ExglStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn context<'a>(ctx: *const ExglContext) -> Result<&'a ExglContext, Failure> {
    ctx.as_ref().ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let s = CString::new(serde_json::to_string(value)?).expect("JSON has no nul bytes");
    *out = s.into_raw();
    Ok(())
}

impl ExglContext {
    fn index(&self, k: usize) -> Result<usize, Failure> {
        if k == 0 || k > self.gl.degree() {
            return Err(Failure(ExglStatus::Argument, format!("index {k} outside 1..={}", self.gl.degree())));
        }
        Ok(k - 1)
    }

    fn elem(&self, x: u32) -> Result<Elem, Failure> {
        Ok(self.gl.ring().check(Elem(x))?)
    }

    fn matrix(&self, json: &str) -> Result<InvertibleMatrix, Failure> {
        let m: Matrix = serde_json::from_str(json)?;
        self.gl.check(&m)?;
        Ok(self.gl.invert(&m)?)
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn exgl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn exgl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context for `GL_n` over the ring described by `ring_spec`, with
/// the ideal generated by `ideal[0..ideal_len]` (a null `ideal` with length 0
/// gives the zero ideal).
///
/// # Safety
/// `ring_spec` must be a nul-terminated string, `ideal` must point to
/// `ideal_len` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exgl_context_new(
    ring_spec: *const c_char,
    n: usize,
    ideal: *const u32,
    ideal_len: usize,
    out: *mut *mut ExglContext,
) -> ExglStatus {
    guard(|| {
        if out.is_null() || (ideal.is_null() && ideal_len > 0) {
            return Err(null());
        }
        let ring = parse_ring_spec(text(ring_spec)?)?;
        let raw = if ideal_len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(ideal, ideal_len)
        };
        let gens = raw
            .iter()
            .map(|&x| ring.check(Elem(x)))
            .collect::<exgl::Result<Vec<_>>>()?;
        let ideal = Ideal::generated(&ring, &gens)?;
        let gl = Gl::new(ring, n)?;
        *out = Box::into_raw(Box::new(ExglContext { gl, ideal }));
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from [`exgl_context_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn exgl_context_free(ctx: *mut ExglContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Ring order and the ideal's size.
///
/// # Safety
/// `ctx` must be a live context; `order` and `ideal_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn exgl_context_info(
    ctx: *const ExglContext,
    order: *mut u32,
    ideal_size: *mut usize,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        if order.is_null() || ideal_size.is_null() {
            return Err(null());
        }
        *order = c.gl.ring().order();
        *ideal_size = c.ideal.len();
        Ok(())
    })
}

/// Sets `*member` to whether `matrix` lies in `C_n(R, I)`.
///
/// # Safety
/// `ctx` must be a live context, `matrix` a nul-terminated string and
/// `member` writable.
#[no_mangle]
pub unsafe extern "C" fn exgl_congruence_member(
    ctx: *const ExglContext,
    matrix: *const c_char,
    member: *mut bool,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        if member.is_null() {
            return Err(null());
        }
        let m: Matrix = serde_json::from_str(text(matrix)?)?;
        c.gl.check(&m)?;
        *member = c.gl.congruence_member(&m, &c.ideal);
        Ok(())
    })
}

/// `t_ij(x)^sigma` as a relative word: `{"word": .., "letters": ..}`.
///
/// # Safety
/// `ctx` must be a live context, `sigma` a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exgl_factor_conj_transvection(
    ctx: *const ExglContext,
    sigma: *const c_char,
    i: usize,
    j: usize,
    x: u32,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = c.matrix(text(sigma)?)?;
        let w = factor_conjugated_transvection(&c.gl, &s, c.index(i)?, c.index(j)?, c.elem(x)?, &c.ideal)?;
        let letters = w.letter_count(c.gl.ring());
        write_string(out, &json!({ "word": w, "letters": letters }))
    })
}

/// `[t_ij(x), sigma]` for `sigma` in `C_n(R, I)` as a relative word.
///
/// # Safety
/// As [`exgl_factor_conj_transvection`].
#[no_mangle]
pub unsafe extern "C" fn exgl_factor_commutator(
    ctx: *const ExglContext,
    sigma: *const c_char,
    i: usize,
    j: usize,
    x: u32,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = c.matrix(text(sigma)?)?;
        let w = factor_congruence_commutator(&c.gl, &s, c.index(i)?, c.index(j)?, c.elem(x)?, &c.ideal)?;
        let letters = w.letter_count(c.gl.ring());
        write_string(out, &json!({ "word": w, "letters": letters }))
    })
}

/// `t_kl(a sigma_ij b)` as a product of conjugates of `sigma`.
///
/// # Safety
/// As [`exgl_factor_conj_transvection`].
#[no_mangle]
pub unsafe extern "C" fn exgl_extract_entry(
    ctx: *const ExglContext,
    sigma: *const c_char,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    a: u32,
    b: u32,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = c.matrix(text(sigma)?)?;
        let (i, j, k, l) = (c.index(i)?, c.index(j)?, c.index(k)?, c.index(l)?);
        let p = extract_entry(&c.gl, &s, i, j, (k, l), c.elem(a)?, c.elem(b)?)?;
        write_string(out, &serde_json::to_value(&p)?)
    })
}

/// `t_kl(a (c sigma_ii - sigma_jj c) b)` as a product of conjugates of `sigma`.
///
/// # Safety
/// As [`exgl_factor_conj_transvection`].
#[no_mangle]
pub unsafe extern "C" fn exgl_extract_diagonal(
    ctx: *const ExglContext,
    sigma: *const c_char,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    a: u32,
    b: u32,
    c_elem: u32,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = c.matrix(text(sigma)?)?;
        let (i, j, k, l) = (c.index(i)?, c.index(j)?, c.index(k)?, c.index(l)?);
        let p = extract_diagonal(&c.gl, &s, i, j, (k, l), c.elem(a)?, c.elem(b)?, c.elem(c_elem)?)?;
        write_string(out, &serde_json::to_value(&p)?)
    })
}

/// Sandwich certificate for a JSON array of matrices.
///
/// # Safety
/// As [`exgl_factor_conj_transvection`].
#[no_mangle]
pub unsafe extern "C" fn exgl_classify(
    ctx: *const ExglContext,
    generators: *const c_char,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let c = context(ctx)?;
        let ms: Vec<Matrix> = serde_json::from_str(text(generators)?)?;
        let gens = ms
            .iter()
            .map(|m| c.gl.check(m).and_then(|_| c.gl.invert(m)))
            .collect::<exgl::Result<Vec<_>>>()?;
        let cert = classify(&c.gl, &gens)?;
        write_string(out, &serde_json::to_value(&cert)?)
    })
}

/// Runs a suite from a JSON config
/// `{"ring", "n", "ideal", "seed", "samples", "cap"}` and writes the report.
/// A suite whose checks fail still returns `Ok`; inspect `"passed"`.
///
/// # Safety
/// `name` and `config` must be nul-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn exgl_run_suite(
    name: *const c_char,
    config: *const c_char,
    out: *mut *mut c_char,
) -> ExglStatus {
    guard(|| {
        let config: SuiteConfig = serde_json::from_str(text(config)?)?;
        let report = run_suite(text(name)?, &config)?;
        write_string(out, &serde_json::to_value(&report)?)
    })
}
