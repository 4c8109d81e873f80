//! C ABI over `nichols_ext`.
//!
//! Every function returns an [`NxStatus`]. On failure a message is available
//! from [`nx_last_error`] until the next call on the same thread. Strings
//! handed out by this library must be released with [`nx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nichols_ext::qalgebra::{Algebra, AlgebraMode};
use nichols_ext::scalars::{CyclotomicField, FieldMode, FieldSpec, PrimeField};
use nichols_ext::suite::{self, Command, RunConfig, Suite};
use nichols_ext::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad `N`, field, exponent, mode, suite or element text.
    InvalidConfig = 3,
    /// The computation itself failed.
    Computation = 4,
    /// The caller's buffer is too small; the needed length was written.
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NxMode {
    Full = 0,
    Graded = 1,
}

enum AnyAlgebra {
    Prime(Algebra<PrimeField>),
    Cyclotomic(Algebra<CyclotomicField>),
}

/// Opaque handle holding a validated configuration and its algebra.
pub struct NxSession {
    config: RunConfig,
    algebra: AnyAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(NxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidSpec(_)
            | Error::InvalidBraiding(_)
            | Error::InvalidParams(_)
            | Error::Parse(_)
            | Error::WrongMode(_)
            | Error::NotDivisor { .. } => NxStatus::InvalidConfig,
            _ => NxStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NxStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NxStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(NxStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(NxStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(NxStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn give_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = c.into_raw() };
}

/// Creates a session.
///
/// `field` may be null for the default prime field; `n_max` of 0 selects the
/// default truncation degree for `n`.
///
/// # Safety
/// `field` must be null or a valid NUL-terminated string; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nx_session_new(
    n: usize,
    field: *const c_char,
    q12_exp: i64,
    mode: NxMode,
    n_max: usize,
    out: *mut *mut NxSession,
) -> NxStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        if n < 2 {
            return Err(Failure(NxStatus::InvalidConfig, format!("N must be at least 2, got {n}")));
        }
        let mut config = RunConfig::new(n);
        if !field.is_null() {
            config.field = text(field)?.parse::<FieldSpec>()?;
        }
        config.q12_exp = q12_exp;
        config.mode = match mode {
            NxMode::Full => AlgebraMode::Full,
            NxMode::Graded => AlgebraMode::Graded,
        };
        if n_max > 0 {
            config.n_max = n_max;
        }
        config.deterministic = true;
        suite::validate(&config)?;
        let spec = &config.field;
        let algebra = match spec.mode {
            FieldMode::PrimeField => AnyAlgebra::Prime(Algebra::from_exponents(
                PrimeField::new(spec.prime.unwrap_or(0), spec.root_order)?,
                n,
                q12_exp,
                config.mode,
            )?),
            FieldMode::Cyclotomic => AnyAlgebra::Cyclotomic(Algebra::from_exponents(
                CyclotomicField::new(spec.root_order)?,
                n,
                q12_exp,
                config.mode,
            )?),
        };
        *out = Box::into_raw(Box::new(NxSession { config, algebra }));
        Ok(())
    })
}

/// # Safety
/// `session` must be null or a pointer from [`nx_session_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nx_session_free(session: *mut NxSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Dimension of the algebra `R`.
///
/// # Safety
/// `session` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nx_algebra_dim(session: *const NxSession, out: *mut usize) -> NxStatus {
    guard(|| {
        non_null(session, "session")?;
        non_null(out, "out")?;
        *out = match &(*session).algebra {
            AnyAlgebra::Prime(a) => a.dim(),
            AnyAlgebra::Cyclotomic(a) => a.dim(),
        };
        Ok(())
    })
}

/// Writes `dim Ext^n` for `n = 0..=n_max` into `dims`.
///
/// `len` receives the number of values; if it exceeds `capacity` nothing is
/// written to `dims` and [`NxStatus::BufferTooSmall`] is returned.
///
/// # Safety
/// `session` and `len` must be valid; `dims` must hold `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn nx_ext_dims(
    session: *const NxSession,
    dims: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> NxStatus {
    guard(|| {
        non_null(session, "session")?;
        non_null(len, "len")?;
        let report = suite::run(&(*session).config, Command::ExtDims)?;
        *len = report.ext_dims.len();
        if report.ext_dims.len() > capacity {
            return Err(Failure(NxStatus::BufferTooSmall, format!("need {} slots", report.ext_dims.len())));
        }
        non_null(dims, "dims")?;
        ptr::copy_nonoverlapping(report.ext_dims.as_ptr(), dims, report.ext_dims.len());
        Ok(())
    })
}

/// Runs a verification suite and returns the JSON report in `json`.
///
/// `passed` is set to whether every check passed. A failing check is not an
/// error: the status is still [`NxStatus::Ok`].
///
/// # Safety
/// `session`, `suite`, `json` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nx_verify(
    session: *const NxSession,
    suite: *const c_char,
    json: *mut *mut c_char,
    passed: *mut bool,
) -> NxStatus {
    guard(|| {
        non_null(session, "session")?;
        non_null(json, "json")?;
        non_null(passed, "passed")?;
        *json = ptr::null_mut();
        let suite = text(suite)?.parse::<Suite>()?;
        let report = suite::run(&(*session).config, Command::Verify(suite))?;
        *passed = report.passed();
        give_string(report.to_json(), json);
        Ok(())
    })
}

/// Multiplies two algebra elements given in the textual format, for example
/// `"x1 y"` and `"2 * x2 + z^1 * x1"`.
///
/// # Safety
/// `session`, `a`, `b` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nx_multiply(
    session: *const NxSession,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> NxStatus {
    guard(|| {
        non_null(session, "session")?;
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let (a, b) = (text(a)?, text(b)?);
        let product = match &(*session).algebra {
            AnyAlgebra::Prime(alg) => alg.render(&alg.mul(&alg.parse(a)?, &alg.parse(b)?)),
            AnyAlgebra::Cyclotomic(alg) => alg.render(&alg.mul(&alg.parse(a)?, &alg.parse(b)?)),
        };
        give_string(product, out);
        Ok(())
    })
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn nx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
