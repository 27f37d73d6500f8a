//! C ABI for `ln-kit`.
//!
//! Conventions:
//!
//! - Every function returns an [`LnStatus`]; results come back through out
//!   pointers.
//! - Big integers cross the boundary as NUL-terminated decimal strings.
//!   Strings returned by the library are owned by the caller and released
//!   with [`ln_string_free`].
//! - Solution lists are opaque [`LnSolutionSet`] handles, released with
//!   [`ln_solution_set_free`].
//! - After a non-`Ok` status, [`ln_last_error`] describes the failure. The
//!   message lives in thread-local storage until the next failing call.

use ln_kit::lucas::{lucas_u, primitive_divisor, LucasPair};
use ln_kit::model::{FamilySpec, LnInstance, Solution};
use ln_kit::oracle::{brute_force, SearchWindow};
use ln_kit::solver::{solve_with, verify_solution_completeness, SolveConfig};
use ln_kit::{class_number_imag, Error};
use num_bigint::BigUint;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed number, violated precondition or out-of-range index.
    InvalidArgument = 2,
    /// Solver and oracle (or casework and exact solve) disagree.
    Mismatch = 3,
    /// The factoring budget ran out before a verdict was reached.
    Indeterminate = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Family selector for [`ln_family_member`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnFamily {
    N1 = 1,
    N2 = 2,
    N7 = 7,
}

/// Opaque list of solutions, sorted by `(n, y)`.
pub struct LnSolutionSet {
    items: Vec<Solution>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(LnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::OracleMismatch { .. } | Error::CaseworkMismatch { .. } | Error::ReplayMismatch(_) => {
                LnStatus::Mismatch
            }
            _ => LnStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null() -> Fail {
    Fail(LnStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LnStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LnStatus::Internal
        }
    }
}

unsafe fn read_big(s: *const c_char) -> Result<BigUint, Fail> {
    if s.is_null() {
        return Err(null());
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(LnStatus::InvalidArgument, "string is not UTF-8".into()))?;
    text.trim()
        .parse()
        .map_err(|_| Fail(LnStatus::InvalidArgument, format!("not a non-negative integer: {text:?}")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("decimal strings contain no NUL").into_raw()
}

unsafe fn write_set(out: *mut *mut LnSolutionSet, items: Vec<Solution>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(LnSolutionSet { items })));
    Ok(())
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ln_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ln_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the decision procedure for `k`, `2 <= n <= n_max`. If `x_max` is
/// non-null the result is cross-checked with the brute-force oracle below
/// that bound; a disagreement returns `Mismatch`.
///
/// # Safety
/// `x_max` is null or a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_solve(
    k: u32,
    n_max: u32,
    x_max: *const c_char,
    out: *mut *mut LnSolutionSet,
) -> LnStatus {
    guard(|| {
        let oracle_x_max = if x_max.is_null() { None } else { Some(read_big(x_max)?) };
        let report = solve_with(&SolveConfig { oracle_x_max, ..SolveConfig::new(k, n_max) })?;
        write_set(out, report.solutions)
    })
}

/// Brute-force search of `x^2 + 19^(2k+1) = 4y^n` over `n_min <= n <= n_max`,
/// `x <= x_max`.
///
/// # Safety
/// `x_max` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_brute_force(
    k: u32,
    n_min: u32,
    n_max: u32,
    x_max: *const c_char,
    out: *mut *mut LnSolutionSet,
) -> LnStatus {
    guard(|| {
        let window = SearchWindow::new(k, n_min, n_max, read_big(x_max)?)?;
        write_set(out, brute_force(&window)?)
    })
}

/// Writes whether the oracle and the classification agree inside the window.
///
/// # Safety
/// `x_max` is a NUL-terminated string; `complete` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_verify(
    k: u32,
    n_min: u32,
    n_max: u32,
    x_max: *const c_char,
    complete: *mut bool,
) -> LnStatus {
    guard(|| {
        let window = SearchWindow::new(k, n_min, n_max, read_big(x_max)?)?;
        write_out(complete, verify_solution_completeness(k, &window)?.complete)
    })
}

/// One family member as a one-element set. `param` is `t` for `N1`/`N2`
/// and `m` for `N7`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_family_member(
    k: u32,
    family: LnFamily,
    param: u32,
    out: *mut *mut LnSolutionSet,
) -> LnStatus {
    guard(|| {
        let spec = match family {
            LnFamily::N1 => FamilySpec::N1(u64::from(param)),
            LnFamily::N2 => FamilySpec::N2(param),
            LnFamily::N7 => FamilySpec::N7(param),
        };
        write_set(out, vec![LnInstance::new(k).instantiate_family(spec)?])
    })
}

/// Number of solutions in `set`; 0 for null.
///
/// # Safety
/// `set` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ln_solution_set_len(set: *const LnSolutionSet) -> usize {
    set.as_ref().map_or(0, |s| s.items.len())
}

/// Solution `index` of `set`. `x` and `y` receive new strings to be released
/// with [`ln_string_free`].
///
/// # Safety
/// `set` is a live handle; `x`, `y`, `n` are writable.
#[no_mangle]
pub unsafe extern "C" fn ln_solution_set_get(
    set: *const LnSolutionSet,
    index: usize,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
    n: *mut u32,
) -> LnStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(null)?;
        if x.is_null() || y.is_null() || n.is_null() {
            return Err(null());
        }
        let s = set.items.get(index).ok_or_else(|| {
            Fail(LnStatus::InvalidArgument, format!("index {index} out of range for {} solutions", set.items.len()))
        })?;
        x.write(owned_string(s.x().to_string()));
        y.write(owned_string(s.y().to_string()));
        n.write(s.n());
        Ok(())
    })
}

/// Releases a solution set. Null is ignored.
///
/// # Safety
/// `set` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ln_solution_set_free(set: *mut LnSolutionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// The Lucas number `u_n(P, Q)` as a decimal string (with a leading `-` when
/// negative).
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_lucas_u(p: i64, q: i64, n: u64, out: *mut *mut c_char) -> LnStatus {
    guard(|| {
        let pair = LucasPair::new(p, q)?;
        write_out(out, owned_string(lucas_u(&pair, n).to_string()))
    })
}

/// Whether `u_n(P, Q)` has a primitive prime divisor. Returns
/// `Indeterminate` when the factoring budget is exhausted first.
///
/// # Safety
/// `exists` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_primitive_divisor(
    p: i64,
    q: i64,
    n: u64,
    budget: u64,
    exists: *mut bool,
) -> LnStatus {
    guard(|| {
        if exists.is_null() {
            return Err(null());
        }
        let v = primitive_divisor(&LucasPair::new(p, q)?, n, budget)?;
        exists.write(v.exists);
        if v.is_indeterminate() {
            return Err(Fail(LnStatus::Indeterminate, "factoring budget exhausted".into()));
        }
        Ok(())
    })
}

/// Class number of the negative discriminant `disc`.
///
/// # Safety
/// `h` is writable.
#[no_mangle]
pub unsafe extern "C" fn ln_class_number(disc: i64, h: *mut u64) -> LnStatus {
    guard(|| write_out(h, class_number_imag(disc)?.h as u64))
}
