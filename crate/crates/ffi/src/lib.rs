//! C ABI over `tanglesig`: opaque braid and matrix handles, status codes,
//! and a thread-local message for the last failure.
//!
//! Every function returns a [`TsStatus`]; outputs go through pointers.
//! Handles are released with their `*_free` function. Angles are in turns,
//! so `omega_j = exp(2 pi i turns[j])`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tanglesig::braidtangle::{ColouredBraid, ColouredObject};
use tanglesig::hermforms::meyer;
use tanglesig::representations::{invariant_form, reduced_rep};
use tanglesig::signatures::{defect, lt_signature, SeifertData};
use tanglesig::{omega_from_turns, CMat, Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    /// Malformed colouring, word, document or dimensions.
    InvalidInput = 1,
    /// Some `omega_j` is 1, off the unit circle, or of the wrong arity.
    ForbiddenOmega = 2,
    /// A numerical check failed (non-Hermitian, ill-conditioned, ...).
    Numerical = 3,
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Opaque coloured braid.
pub struct TsBraid(ColouredBraid);

/// Opaque dense complex matrix.
pub struct TsMatrix(CMat);

/// Result of [`ts_defect`]. `has_lhs` and `has_meyer` flag which optional
/// fields are meaningful.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TsDefect {
    pub lhs: i64,
    pub rhs: i64,
    pub meyer_rhs: i64,
    pub has_lhs: bool,
    pub has_meyer: bool,
    pub admissible: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::OmegaOnForbiddenLocus { .. } | Error::OmegaArity { .. } | Error::OmegaNotUnit { .. } => {
            TsStatus::ForbiddenOmega
        }
        Error::NotHermitian { .. }
        | Error::IllConditioned { .. }
        | Error::NotIsotropic { .. }
        | Error::NotUnitary { .. }
        | Error::DecompositionFailed
        | Error::NonUniqueForm { .. }
        | Error::AdmissibilityViolated => TsStatus::Numerical,
        _ => TsStatus::InvalidInput,
    }
}

/// Runs `f`, recording failures and catching panics.
fn guard(f: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TsStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic in tanglesig");
            TsStatus::Panic
        }
    }
}

fn lift<T>(r: tanglesig::Result<T>) -> Result<T, (TsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (TsStatus, String) {
    (TsStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` must be null or valid for `len` reads.
unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], (TsStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn braid_ref<'a>(b: *const TsBraid) -> Result<&'a ColouredBraid, (TsStatus, String)> {
    b.as_ref().map(|b| &b.0).ok_or_else(null)
}

unsafe fn omega(turns: *const f64, mu: usize) -> Result<Vec<Complex64>, (TsStatus, String)> {
    Ok(slice(turns, mu)?.iter().map(|&t| omega_from_turns(t)).collect())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a braid on `n` strands coloured by `colours[0..n]` in `±1..±mu`,
/// with word `word[0..len]` of signed 1-based generators.
///
/// # Safety
/// Array arguments must be valid for their lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_braid_new(
    mu: u32,
    colours: *const i32,
    n: usize,
    word: *const i32,
    len: usize,
    out: *mut *mut TsBraid,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let c = lift(ColouredObject::new(mu, slice(colours, n)?.to_vec()))?;
        let b = lift(ColouredBraid::new(c, slice(word, len)?.to_vec()))?;
        *out = Box::into_raw(Box::new(TsBraid(b)));
        Ok(())
    })
}

/// Parses a braid document `{"mu": .., "colours": [..], "word": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_braid_from_json(json: *const c_char, out: *mut *mut TsBraid) -> TsStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (TsStatus::InvalidInput, e.to_string()))?;
        let b = lift(tanglesig::io::parse_braid(text))?;
        *out = Box::into_raw(Box::new(TsBraid(b)));
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_braid_free(b: *mut TsBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of strands, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_braid_strands(b: *const TsBraid) -> usize {
    b.as_ref().map_or(0, |b| b.0.strands())
}

/// Reduced Burau/Gassner matrix of `b` at the torus point `turns[0..mu]`.
///
/// # Safety
/// `b` must be a live handle, `turns` valid for `mu` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_reduced_rep(
    b: *const TsBraid,
    turns: *const f64,
    mu: usize,
    tol: f64,
    out: *mut *mut TsMatrix,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let r = lift(reduced_rep(braid_ref(b)?, &omega(turns, mu)?, tol))?;
        *out = Box::into_raw(Box::new(TsMatrix(r.matrix)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_rows(m: *const TsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.nrows())
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_cols(m: *const TsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.ncols())
}

/// Entry `(row, col)`, 0-based.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_get(
    m: *const TsMatrix,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> TsStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(null)?;
        if re.is_null() || im.is_null() {
            return Err(null());
        }
        if row >= m.0.nrows() || col >= m.0.ncols() {
            return Err((TsStatus::InvalidInput, format!("index ({row}, {col}) out of range")));
        }
        let z = m.0[(row, col)];
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_matrix_free(m: *mut TsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Meyer cocycle of the representation matrices of two braids in the
/// same coloured braid group.
///
/// # Safety
/// Handles must be live, `turns` valid for `mu` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_meyer(
    b1: *const TsBraid,
    b2: *const TsBraid,
    turns: *const f64,
    mu: usize,
    tol: f64,
    out: *mut i64,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let (b1, b2) = (braid_ref(b1)?, braid_ref(b2)?);
        if !b1.is_endomorphism() || b1.source() != b2.source() || !b2.is_endomorphism() {
            return Err((TsStatus::InvalidInput, "braids must be endomorphisms of one object".into()));
        }
        let w = omega(turns, mu)?;
        let j = lift(invariant_form(b1.source(), &w, tol))?.space();
        let r1 = lift(reduced_rep(b1, &w, tol))?.matrix;
        let r2 = lift(reduced_rep(b2, &w, tol))?.matrix;
        *out = lift(meyer(&r1, &r2, &j, tol))?;
        Ok(())
    })
}

/// Levine-Tristram signature and nullity of a Seifert matrix given row-major
/// as `n * n` doubles.
///
/// # Safety
/// `a` must be valid for `n * n` reads; `sig` and `nullity` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_lt_signature(
    a: *const f64,
    n: usize,
    turns: f64,
    tol: f64,
    sig: *mut i64,
    nullity: *mut usize,
) -> TsStatus {
    guard(|| {
        if sig.is_null() || nullity.is_null() {
            return Err(null());
        }
        let v = slice(a, n * n)?;
        let data = SeifertData {
            a: tanglesig::nalgebra::DMatrix::from_row_slice(n, n, v),
        };
        let s = lift(lt_signature(&data, omega_from_turns(turns), tol))?;
        *sig = s.value();
        *nullity = s.null;
        Ok(())
    })
}

/// Additivity defect for two braids; the closure side is filled in for
/// one-colour braids only.
///
/// # Safety
/// Handles must be live, `turns` valid for `mu` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_defect(
    b1: *const TsBraid,
    b2: *const TsBraid,
    turns: *const f64,
    mu: usize,
    tol: f64,
    out: *mut TsDefect,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let (b1, b2) = (braid_ref(b1)?, braid_ref(b2)?);
        let d = lift(defect(&b1.to_tangle(), &b2.to_tangle(), &omega(turns, mu)?, tol, None))?;
        *out = TsDefect {
            lhs: d.lhs.unwrap_or(0),
            rhs: d.rhs,
            meyer_rhs: d.meyer_rhs.unwrap_or(0),
            has_lhs: d.lhs.is_some(),
            has_meyer: d.meyer_rhs.is_some(),
            admissible: d.admissible,
        };
        Ok(())
    })
}
