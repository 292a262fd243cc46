//! C interface to `rankcrit`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `rc_*_free`. Every fallible call returns an `RcStatus`;
//! results come back through out-pointers, and `rc_last_error` holds the
//! message of the most recent failure on the calling thread.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access the function
//! documents. Handles must come from this library and be freed once.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use num_rational::BigRational;
use rankcrit::budget::Budget;
use rankcrit::codes::Kind;
use rankcrit::gf::{Elem, Field};
use rankcrit::qcomb::{rat_int, to_f64};
use rankcrit::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    InvalidArgument = 1,
    BudgetExceeded = 2,
    FieldMismatch = 3,
    FieldTooLarge = 4,
    Precondition = 5,
    NullPointer = 6,
    /// A verification ran and at least one check failed.
    VerifyFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcKind {
    Full = 0,
    Symmetric = 1,
    Alternating = 2,
    Hermitian = 3,
}

impl From<RcKind> for Kind {
    fn from(k: RcKind) -> Kind {
        match k {
            RcKind::Full => Kind::Full,
            RcKind::Symmetric => Kind::Symmetric,
            RcKind::Alternating => Kind::Alternating,
            RcKind::Hermitian => Kind::Hermitian,
        }
    }
}

/// A finite field F_{q^n}, or F_q when n = 1.
pub struct RcField(Arc<Field>);

/// An exact rational number.
pub struct RcRational(BigRational);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RcStatus {
    match e {
        Error::InvalidArgument(_) => RcStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => RcStatus::BudgetExceeded,
        Error::FieldMismatch => RcStatus::FieldMismatch,
        Error::FieldTooLarge(..) => RcStatus::FieldTooLarge,
        Error::Precondition(_) => RcStatus::Precondition,
    }
}

enum Fail {
    Lib(Error),
    Null,
    Verify(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            RcStatus::NullPointer
        }
        Ok(Err(Fail::Verify(msg))) => {
            set_error(&msg);
            RcStatus::VerifyFailed
        }
        Err(_) => {
            set_error("internal panic");
            RcStatus::Panic
        }
    }
}

fn out<T>(ptr: *mut T, v: T) -> Result<(), Fail> {
    if ptr.is_null() {
        return Err(Fail::Null);
    }
    unsafe { ptr.write(v) };
    Ok(())
}

fn field_ref<'a>(f: *const RcField) -> Result<&'a Field, Fail> {
    unsafe { f.as_ref() }.map(|h| &*h.0).ok_or(Fail::Null)
}

fn rational_out(ptr: *mut *mut RcRational, r: BigRational) -> Result<(), Fail> {
    out(ptr, Box::into_raw(Box::new(RcRational(r))))
}

fn budget_of(steps: u64) -> Budget {
    if steps == 0 {
        Budget::default()
    } else {
        Budget::new(steps)
    }
}

/// Message of the last failed call on this thread. Valid until the next call.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates F_{q^n}. `q` must be a prime power.
#[no_mangle]
pub unsafe extern "C" fn rc_field_new(q: u64, n: u32, field: *mut *mut RcField) -> RcStatus {
    guard(|| {
        let base = Arc::new(Field::from_q(q)?);
        let f = if n <= 1 { base } else { Arc::new(Field::extension(base, n)?) };
        out(field, Box::into_raw(Box::new(RcField(f))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_field_free(field: *mut RcField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Number of elements; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rc_field_order(field: *const RcField) -> u64 {
    field_ref(field).map_or(0, |f| f.order())
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcFieldOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// Elements are indices 0..order, with 0 and 1 the field's zero and one.
#[no_mangle]
pub unsafe extern "C" fn rc_field_op(field: *const RcField, op: RcFieldOp, a: u32, b: u32, result: *mut u32) -> RcStatus {
    guard(|| {
        let f = field_ref(field)?;
        let o = f.order();
        if a as u64 >= o || b as u64 >= o {
            return Err(Error::InvalidArgument("element outside the field".into()).into());
        }
        let v: Elem = match op {
            RcFieldOp::Add => f.add(a, b),
            RcFieldOp::Sub => f.sub(a, b),
            RcFieldOp::Mul => f.mul(a, b),
            RcFieldOp::Div => f.div(a, b).ok_or(Error::InvalidArgument("division by zero".into()))?,
        };
        out(result, v)
    })
}

/// a^{q^i} over the base field.
#[no_mangle]
pub unsafe extern "C" fn rc_field_frobenius(field: *const RcField, a: u32, i: u32, result: *mut u32) -> RcStatus {
    guard(|| {
        let f = field_ref(field)?;
        if a as u64 >= f.order() {
            return Err(Error::InvalidArgument("element outside the field".into()).into());
        }
        out(result, f.frobenius(a, i))
    })
}

/// Norm and trace down to the base field.
#[no_mangle]
pub unsafe extern "C" fn rc_field_norm_trace(field: *const RcField, a: u32, norm: *mut u32, trace: *mut u32) -> RcStatus {
    guard(|| {
        let f = field_ref(field)?;
        if a as u64 >= f.order() {
            return Err(Error::InvalidArgument("element outside the field".into()).into());
        }
        out(norm, f.norm(a))?;
        out(trace, f.trace(a))
    })
}

#[no_mangle]
pub unsafe extern "C" fn rc_rational_free(r: *mut RcRational) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Nearest double; NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rc_rational_to_f64(r: *const RcRational) -> f64 {
    unsafe { r.as_ref() }.map_or(f64::NAN, |r| to_f64(&r.0))
}

/// "num/den", or just "num" for integers. Free with `rc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rc_rational_to_string(r: *const RcRational) -> *mut c_char {
    match unsafe { r.as_ref() } {
        Some(r) => CString::new(r.0.to_string()).expect("digits only").into_raw(),
        None => std::ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Gaussian binomial [i j]_q.
#[no_mangle]
pub unsafe extern "C" fn rc_qbinom(i: i64, j: i64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rat_int(rankcrit::qcomb::qbinom(i, j, q))))
}

/// Density of full-rank MRD codes in F_q^{3x3}.
#[no_mangle]
pub unsafe extern "C" fn rc_density_3x3(q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rankcrit::codes::formulas::density_3x3_formula(q)?))
}

/// Lower bound on the number of full-rank MRD codes in F_q^{n x n}.
#[no_mangle]
pub unsafe extern "C" fn rc_mrd_lowerbound_count(n: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rankcrit::codes::formulas::mrd_lowerbound_formula(n, q)?.count))
}

/// Average density over point sets of size `ell` in F_q^N.
#[no_mangle]
pub unsafe extern "C" fn rc_avg_density(ambient_dim: u64, k: u64, ell: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rankcrit::critical::avg_density_formula(ambient_dim, k, ell, q)?))
}

/// Average density over point sets of size `ell` and rank `rho`.
#[no_mangle]
pub unsafe extern "C" fn rc_avg_density_rank(ambient_dim: u64, k: u64, ell: u64, rho: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rankcrit::critical::avg_density_rank_formula(ambient_dim, k, ell, rho, q)?))
}

#[no_mangle]
pub unsafe extern "C" fn rc_lambda(ambient_dim: u64, s: u64, ell: u64, rho: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rat_int(rankcrit::critical::lambda(ambient_dim, s, ell, rho, q)?)))
}

/// Matrices of rank i in the n x n space of the given kind.
#[no_mangle]
pub unsafe extern "C" fn rc_rank_count(kind: RcKind, n: u64, i: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rat_int(rankcrit::restricted::rank_count(kind.into(), n, i, q)?)))
}

#[no_mangle]
pub unsafe extern "C" fn rc_tensor_ratio(r: u64, n: u64, q: u64, result: *mut *mut RcRational) -> RcStatus {
    guard(|| rational_out(result, rankcrit::restricted::tensor_ratio(r, n, q)?))
}

/// Exhaustive density of k-dimensional codes with minimum rank distance
/// `d` in the n x m space of the given kind (restricted kinds need m = n).
/// `budget` = 0 uses the default step budget.
#[no_mangle]
pub unsafe extern "C" fn rc_density_bruteforce(
    kind: RcKind,
    n: u32,
    m: u32,
    k: u32,
    d: u32,
    q: u64,
    budget: u64,
    result: *mut *mut RcRational,
) -> RcStatus {
    guard(|| {
        let b = budget_of(budget);
        let (n, m, k, d) = (n as usize, m as usize, k as usize, d as usize);
        let r = match kind {
            RcKind::Full => rankcrit::codes::density_bruteforce(n, m, k, d, q, &b)?,
            _ if m != n => return Err(Error::InvalidArgument("restricted spaces are square".into()).into()),
            _ => rankcrit::restricted::restricted_density_bruteforce(kind.into(), n, k, d, q, &b)?,
        };
        rational_out(result, r.density)
    })
}

/// Runs a verification suite ("hejar", "mrd192", "lambda", "carlitz",
/// "tensor", "cw-bridge" or "all") and stores the JSON report in `report`,
/// to be released with `rc_string_free`. Returns `VerifyFailed` when a
/// check failed; the report is written either way.
#[no_mangle]
pub unsafe extern "C" fn rc_verify(suite: *const c_char, budget: u64, report: *mut *mut c_char) -> RcStatus {
    guard(|| {
        if suite.is_null() || report.is_null() {
            return Err(Fail::Null);
        }
        let suite = unsafe { CStr::from_ptr(suite) }
            .to_str()
            .map_err(|_| Error::InvalidArgument("suite name is not UTF-8".into()))?;
        let budget = budget.to_string();
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let args = ["rankcrit", "verify", suite, "--format", "json", "--budget", budget.as_str()];
        let args: &[&str] = if budget == "0" { &args[..5] } else { &args };
        let code = rankcrit::cli::run(args.iter().copied(), &mut stdout, &mut stderr);
        if code == 2 {
            return Err(Error::InvalidArgument(String::from_utf8_lossy(&stderr).trim().to_string()).into());
        }
        let text = CString::new(stdout).map_err(|_| Error::Precondition("report contains nul".into()))?;
        out(report, text.into_raw())?;
        if code == 1 {
            return Err(Fail::Verify("at least one check failed".into()));
        }
        Ok(())
    })
}
