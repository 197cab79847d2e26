//! C ABI over `gammarep`.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`GammarepStatus`]; results are written
//!   through out-pointers only on success.
//! * Representation and case names are NUL-terminated UTF-8 strings using the
//!   same spellings as the command-line tool (`"u-integral"`, `"p2-alt"`, ...).
//! * Evaluation controls live in an opaque [`GammarepCtx`] created with
//!   [`gammarep_ctx_new`] and released with [`gammarep_ctx_free`].
//! * After a non-zero status, [`gammarep_last_error`] returns a message for the
//!   calling thread. The pointer stays valid until the next failing call on
//!   that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gammarep::cisums::{ci_sum_closed, ci_sum_oracle, CaseId};
use gammarep::digamma::{psi_rational, psi_ref, psi_rep, RationalArg, RepDigamma};
use gammarep::loggamma::{lngamma_ref, lngamma_rep, RepLogGamma};
use gammarep::numkernel::{ci_si, hurwitz};
use gammarep::polygamma::{polygamma_ref, polygamma_rep, RepPolygamma};
use gammarep::{Ctrl, Error, EvalResult};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammarepStatus {
    Ok = 0,
    /// Argument outside the domain of the function.
    Domain = 1,
    /// Argument is a pole.
    Pole = 2,
    /// Internal table capacity exceeded.
    Capacity = 3,
    /// Non-finite integrand encountered during quadrature.
    BadIntegrand = 4,
    /// Control parameters rejected.
    InvalidCtrl = 5,
    /// A required pointer was null.
    NullPointer = 6,
    /// A name string was not valid UTF-8 or not recognised.
    InvalidName = 7,
    /// The library panicked; this is a bug.
    Internal = 8,
}

/// Value with its error estimate and work counters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammarepResult {
    pub value: f64,
    pub err_est: f64,
    pub terms_used: u64,
    pub nodes_used: u64,
    pub converged: bool,
}

impl From<EvalResult> for GammarepResult {
    fn from(r: EvalResult) -> Self {
        GammarepResult {
            value: r.value,
            err_est: r.err_est,
            terms_used: r.terms_used,
            nodes_used: r.nodes_used,
            converged: r.converged,
        }
    }
}

/// Opaque evaluation context holding the control parameters.
pub struct GammarepCtx {
    ctrl: Ctrl,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GammarepStatus {
    match e {
        Error::Domain(_) => GammarepStatus::Domain,
        Error::Pole(_) => GammarepStatus::Pole,
        Error::Capacity { .. } => GammarepStatus::Capacity,
        Error::BadIntegrand(_) => GammarepStatus::BadIntegrand,
        Error::InvalidCtrl(_) => GammarepStatus::InvalidCtrl,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Name(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard<F>(body: F) -> GammarepStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GammarepStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            GammarepStatus::NullPointer
        }
        Ok(Err(Failure::Name(msg))) => {
            set_error(msg);
            GammarepStatus::InvalidName
        }
        Err(_) => {
            set_error("internal error".into());
            GammarepStatus::Internal
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    unsafe { p.as_mut() }.ok_or(Failure::Null(what))
}

unsafe fn ctx_ref<'a>(ctx: *const GammarepCtx) -> Result<&'a GammarepCtx, Failure> {
    unsafe { ctx.as_ref() }.ok_or(Failure::Null("ctx"))
}

unsafe fn name_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|_| Failure::Name(format!("{what} is not valid UTF-8")))
}

fn parse_name<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: Error| Failure::Name(e.to_string()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gammarep_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the most recent failure on this thread, or null.
#[no_mangle]
pub extern "C" fn gammarep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Creates a context with default controls. Never returns null.
#[no_mangle]
pub extern "C" fn gammarep_ctx_new() -> *mut GammarepCtx {
    Box::into_raw(Box::new(GammarepCtx { ctrl: Ctrl::default() }))
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or a pointer obtained from [`gammarep_ctx_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn gammarep_ctx_free(ctx: *mut GammarepCtx) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Replaces the control parameters; the context is unchanged on failure.
///
/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn gammarep_ctx_set(
    ctx: *mut GammarepCtx,
    max_terms: u64,
    target_tol: f64,
    quad_levels: u32,
    tail_order: u32,
) -> GammarepStatus {
    guard(|| {
        let ctx = unsafe { out_ref(ctx, "ctx") }?;
        let ctrl = Ctrl {
            max_terms: usize::try_from(max_terms).map_err(|_| Error::InvalidCtrl("max_terms too large".into()))?,
            target_tol,
            quad_levels,
            tail_order,
        };
        ctrl.validate()?;
        ctx.ctrl = ctrl;
        Ok(())
    })
}

/// Reads back the control parameters. Any out-pointer may be null.
///
/// # Safety
/// `ctx` must be a live context; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_ctx_get(
    ctx: *const GammarepCtx,
    max_terms: *mut u64,
    target_tol: *mut f64,
    quad_levels: *mut u32,
    tail_order: *mut u32,
) -> GammarepStatus {
    guard(|| {
        let c = unsafe { ctx_ref(ctx) }?.ctrl;
        unsafe {
            if let Some(p) = max_terms.as_mut() {
                *p = c.max_terms as u64;
            }
            if let Some(p) = target_tol.as_mut() {
                *p = c.target_tol;
            }
            if let Some(p) = quad_levels.as_mut() {
                *p = c.quad_levels;
            }
            if let Some(p) = tail_order.as_mut() {
                *p = c.tail_order;
            }
        }
        Ok(())
    })
}

/// Reference digamma value ψ(a), a > 0.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_psi_ref(a: f64, out: *mut f64) -> GammarepStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = psi_ref(a)?;
        Ok(())
    })
}

/// ψ(a) by the named representation under the context's controls.
///
/// Passing a null `ctx` uses the representation's own default controls.
///
/// # Safety
/// `ctx` must be null or live, `rep` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_psi(
    ctx: *const GammarepCtx,
    a: f64,
    rep: *const c_char,
    out: *mut GammarepResult,
) -> GammarepStatus {
    guard(|| {
        let rep: RepDigamma = parse_name(unsafe { name_arg(rep, "rep") }?)?;
        let ctrl = unsafe { ctx.as_ref() }.map_or_else(|| rep.default_ctrl(), |c| c.ctrl);
        let out = unsafe { out_ref(out, "out") }?;
        *out = psi_rep(a, rep, &ctrl)?.into();
        Ok(())
    })
}

/// ψ(p/q) in closed form, 0 < p < q, gcd(p, q) = 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_psi_rational(p: u64, q: u64, out: *mut f64) -> GammarepStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = psi_rational(RationalArg::new(p, q)?);
        Ok(())
    })
}

/// Reference polygamma value ψ^{(j)}(a).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_polygamma_ref(j: u32, a: f64, out: *mut f64) -> GammarepStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = polygamma_ref(j, a)?;
        Ok(())
    })
}

/// ψ^{(j)}(a) by the named representation.
///
/// # Safety
/// As for [`gammarep_psi`].
#[no_mangle]
pub unsafe extern "C" fn gammarep_polygamma(
    ctx: *const GammarepCtx,
    j: u32,
    a: f64,
    rep: *const c_char,
    out: *mut GammarepResult,
) -> GammarepStatus {
    guard(|| {
        let rep: RepPolygamma = parse_name(unsafe { name_arg(rep, "rep") }?)?;
        let ctrl = unsafe { ctx.as_ref() }.map_or_else(|| rep.default_ctrl(), |c| c.ctrl);
        let out = unsafe { out_ref(out, "out") }?;
        *out = polygamma_rep(j, a, rep, &ctrl)?.into();
        Ok(())
    })
}

/// Reference value of ln Γ(a), a > 0.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_lngamma_ref(a: f64, out: *mut f64) -> GammarepStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = lngamma_ref(a)?;
        Ok(())
    })
}

/// ln Γ(a) by the named representation.
///
/// # Safety
/// As for [`gammarep_psi`].
#[no_mangle]
pub unsafe extern "C" fn gammarep_lngamma(
    ctx: *const GammarepCtx,
    a: f64,
    rep: *const c_char,
    out: *mut GammarepResult,
) -> GammarepStatus {
    guard(|| {
        let rep: RepLogGamma = parse_name(unsafe { name_arg(rep, "rep") }?)?;
        let ctrl = unsafe { ctx.as_ref() }.map_or_else(|| rep.default_ctrl(), |c| c.ctrl);
        let out = unsafe { out_ref(out, "out") }?;
        *out = lngamma_rep(a, rep, &ctrl)?.into();
        Ok(())
    })
}

/// Cosine and sine integrals Ci(x), Si(x) for x > 0. Either out-pointer may be null.
///
/// # Safety
/// Non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_ci_si(x: f64, ci: *mut f64, si: *mut f64) -> GammarepStatus {
    guard(|| {
        let v = ci_si(x)?;
        unsafe {
            if let Some(p) = ci.as_mut() {
                *p = v.ci;
            }
            if let Some(p) = si.as_mut() {
                *p = v.si;
            }
        }
        Ok(())
    })
}

/// Hurwitz zeta ζ(s, q).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_hurwitz_zeta(s: f64, q: f64, out: *mut f64) -> GammarepStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = hurwitz(s, q)?;
        Ok(())
    })
}

/// Cosine-integral sum `Σ_n w_n Ci(βn)` for the named weight family.
///
/// `case` is a family name such as `"p2"` or `"real-a"`; `k`, `a` and `z` supply
/// the family parameter where one is needed and are ignored otherwise. With
/// `closed` true the closed form is evaluated, otherwise the direct series.
///
/// # Safety
/// `ctx` must be null or live, `case` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gammarep_ci_sum(
    ctx: *const GammarepCtx,
    beta: f64,
    case: *const c_char,
    k: u32,
    a: f64,
    z: f64,
    closed: bool,
    out: *mut GammarepResult,
) -> GammarepStatus {
    guard(|| {
        let name = unsafe { name_arg(case, "case") }?;
        if !CaseId::NAMES.contains(&name) {
            return Err(Failure::Name(format!("unknown case {name:?}")));
        }
        let case = CaseId::from_parts(name, Some(k), Some(a), Some(z))?;
        let ctrl = unsafe { ctx.as_ref() }.map_or_else(Ctrl::default, |c| c.ctrl);
        let out = unsafe { out_ref(out, "out") }?;
        let r = if closed { ci_sum_closed(beta, case, &ctrl)? } else { ci_sum_oracle(beta, case, &ctrl)? };
        *out = r.into();
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Pole("x".into())), GammarepStatus::Pole);
        assert_eq!(status_of(&Error::InvalidCtrl("x".into())), GammarepStatus::InvalidCtrl);
    }

    #[test]
    fn panics_become_internal() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, GammarepStatus::Internal);
        assert!(!gammarep_last_error().is_null());
    }
}
