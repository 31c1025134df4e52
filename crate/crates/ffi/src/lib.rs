//! C ABI over `zeta_routes`.
//!
//! Every function returns a [`ZrStatus`]; on failure a message is kept per
//! thread and can be read with [`zr_last_error_message`]. Evaluators are
//! opaque handles created with [`zr_evaluator_new`] and released with
//! [`zr_evaluator_free`]. Strings handed out by the library are released
//! with [`zr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zeta_routes::bernoulli::{format_rational, BernoulliTable};
use zeta_routes::distributions::{mc_moment, DistributionKind, DistributionSpec};
use zeta_routes::routes::{compare_routes, default_route, evaluate, CompareOptions, FaultInjection};
use zeta_routes::{QuadratureConfig, RouteConfig, RouteId, SeriesConfig, ValueWithError, ZetaError};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrStatus {
    Ok = 0,
    /// Argument outside the operation's domain.
    Domain = 1,
    /// Argument too close to the pole at s = 1.
    Pole = 2,
    /// Index beyond the Bernoulli table.
    Capacity = 3,
    /// Quadrature met a non-finite or non-decaying integrand, or a value overflowed.
    Numerical = 4,
    /// An internal cross-check disagreed.
    Consistency = 5,
    /// Bad configuration or unknown enumerator.
    Config = 6,
    NullPointer = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Route selector. `ZR_ROUTE_DEFAULT` picks Euler's closed form at even
/// integers and the eta series elsewhere.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrRoute {
    Default = -1,
    EulerEven = 0,
    IntegralGeneral = 1,
    IntegralPosint = 2,
    IntegralHalfint = 3,
    CotangentOdd = 4,
    EtaSeries = 5,
    DirichletSeries = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrDistribution {
    Logistic = 0,
    HalfLogistic = 1,
    EllipticLogistic = 2,
}

/// Number of routes; the size of [`ZrComparison::results`].
pub const ZR_ROUTE_COUNT: usize = 7;

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZrValue {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZrRouteValue {
    /// A `ZrRoute` value.
    pub route: i32,
    pub result: ZrValue,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZrComparison {
    pub argument: f64,
    pub max_pairwise_gap: f64,
    pub tolerance: f64,
    pub allowance: f64,
    pub pass: bool,
    /// Entries of `results` in use, in route order.
    pub n_results: usize,
    pub results: [ZrRouteValue; ZR_ROUTE_COUNT],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZrMcEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
    /// Closed-form value of the moment.
    pub target: f64,
    pub z_score: f64,
}

/// Opaque evaluator holding route tolerances and budgets.
pub struct ZrEvaluator {
    config: RouteConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &ZetaError) -> ZrStatus {
    match err {
        ZetaError::Domain { .. } | ZetaError::NoApplicableRoute { .. } => ZrStatus::Domain,
        ZetaError::PoleProximity { .. } => ZrStatus::Pole,
        ZetaError::Capacity { .. } => ZrStatus::Capacity,
        ZetaError::NonFinite { .. } | ZetaError::NonDecay { .. } | ZetaError::Overflow(_) => ZrStatus::Numerical,
        ZetaError::Consistency { .. } => ZrStatus::Consistency,
        ZetaError::Config(_) => ZrStatus::Config,
    }
}

/// Runs `body` with panics and errors turned into status codes.
fn guard<F: FnOnce() -> Result<(), (ZrStatus, String)>>(body: F) -> ZrStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ZrStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            ZrStatus::Panic
        }
    }
}

fn lift(err: ZetaError) -> (ZrStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (ZrStatus, String) {
    (ZrStatus::NullPointer, format!("{what} is NULL"))
}

fn route_from_code(code: i32) -> Result<Option<RouteId>, (ZrStatus, String)> {
    if code == ZrRoute::Default as i32 {
        return Ok(None);
    }
    usize::try_from(code)
        .ok()
        .and_then(|i| RouteId::ALL.get(i).copied())
        .map(Some)
        .ok_or_else(|| (ZrStatus::Config, format!("unknown route code {code}")))
}

fn route_code(route: RouteId) -> i32 {
    RouteId::ALL.iter().position(|&r| r == route).expect("route is listed") as i32
}

fn distribution_from_code(code: i32) -> Result<DistributionKind, (ZrStatus, String)> {
    usize::try_from(code)
        .ok()
        .and_then(|i| DistributionKind::ALL.get(i).copied())
        .ok_or_else(|| (ZrStatus::Config, format!("unknown distribution code {code}")))
}

fn to_value(v: &ValueWithError) -> ZrValue {
    ZrValue {
        value: v.value,
        abs_error: v.abs_error,
        evaluations: v.evaluations,
        converged: v.converged,
    }
}

/// Creates an evaluator. `tol` is the absolute tolerance for every route;
/// `max_evals` caps integrand evaluations per quadrature (0 keeps the
/// default). Returns NULL on invalid input.
#[no_mangle]
pub extern "C" fn zr_evaluator_new(tol: f64, max_evals: usize) -> *mut ZrEvaluator {
    let mut handle = ptr::null_mut();
    guard(|| {
        let mut quadrature = QuadratureConfig::default().with_tol(tol);
        if max_evals > 0 {
            quadrature.max_evals = max_evals;
        }
        quadrature.validate().map_err(lift)?;
        let config = RouteConfig {
            quadrature,
            series: SeriesConfig::default().with_tol(tol),
        };
        handle = Box::into_raw(Box::new(ZrEvaluator { config }));
        Ok(())
    });
    handle
}

/// Releases an evaluator. NULL is ignored.
///
/// # Safety
/// `evaluator` must come from [`zr_evaluator_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zr_evaluator_free(evaluator: *mut ZrEvaluator) {
    if !evaluator.is_null() {
        drop(Box::from_raw(evaluator));
    }
}

/// Evaluates ζ(s) by `route` (a `ZrRoute` value).
///
/// # Safety
/// `evaluator` must be a live handle and `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn zr_eval(evaluator: *const ZrEvaluator, s: f64, route: i32, out: *mut ZrValue) -> ZrStatus {
    guard(|| {
        let ev = evaluator.as_ref().ok_or_else(|| null("evaluator"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let route = route_from_code(route)?.unwrap_or_else(|| default_route(s));
        let result = evaluate(route, s, &ev.config).map_err(lift)?;
        *out = to_value(&result.result);
        Ok(())
    })
}

/// Runs every applicable route at `s` and checks agreement within `tol`
/// plus the two largest reported errors. A failed check is reported through
/// `out->pass`, not the status. `fault_offset` other than 0 is added to the
/// first route's value, for testing the check itself.
///
/// # Safety
/// `evaluator` must be a live handle and `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn zr_compare(
    evaluator: *const ZrEvaluator,
    s: f64,
    tol: f64,
    fault_offset: f64,
    out: *mut ZrComparison,
) -> ZrStatus {
    guard(|| {
        let ev = evaluator.as_ref().ok_or_else(|| null("evaluator"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let fault = (fault_offset != 0.0).then_some(FaultInjection {
            route: None,
            offset: fault_offset,
        });
        let options = CompareOptions {
            config: ev.config,
            fault,
        };
        let report = compare_routes(s, None, tol, &options).map_err(lift)?;
        let empty = ZrRouteValue {
            route: ZrRoute::Default as i32,
            result: ZrValue::default(),
        };
        let mut results = [empty; ZR_ROUTE_COUNT];
        for (slot, r) in results.iter_mut().zip(&report.results) {
            *slot = ZrRouteValue {
                route: route_code(r.route),
                result: to_value(&r.result),
            };
        }
        *out = ZrComparison {
            argument: report.argument,
            max_pairwise_gap: report.max_pairwise_gap,
            tolerance: report.tolerance,
            allowance: report.allowance(),
            pass: report.pass,
            n_results: report.results.len(),
            results,
        };
        Ok(())
    })
}

/// Writes `B_n` as `"num/den"` (or an integer) to `*out`. Release the
/// string with [`zr_string_free`].
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn zr_bernoulli(n: usize, out: *mut *mut c_char) -> ZrStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let b = BernoulliTable::shared().get(n).map_err(lift)?;
        let text = CString::new(format_rational(&b)).expect("digits contain no NUL");
        *out = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Seeded Monte Carlo estimate of `E X^k` for `distribution` (a
/// `ZrDistribution` value) from `n >= 1000` samples.
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn zr_mc_moment(
    distribution: i32,
    k: u32,
    n: usize,
    seed: u64,
    out: *mut ZrMcEstimate,
) -> ZrStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let kind = distribution_from_code(distribution)?;
        let spec = DistributionSpec::new(kind).map_err(lift)?;
        let target = spec.closed_moment(k).map_err(lift)?;
        let est = mc_moment(&spec, k, seed, n).map_err(lift)?;
        *out = ZrMcEstimate {
            mean: est.mean,
            stderr: est.stderr,
            n_samples: est.n_samples,
            seed: est.seed,
            target,
            z_score: est.z_score(target),
        };
        Ok(())
    })
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn zr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zr_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

/// Short name of a status code, a static string.
#[no_mangle]
pub extern "C" fn zr_status_name(status: ZrStatus) -> *const c_char {
    let name: &'static CStr = match status {
        ZrStatus::Ok => c"ok",
        ZrStatus::Domain => c"domain",
        ZrStatus::Pole => c"pole",
        ZrStatus::Capacity => c"capacity",
        ZrStatus::Numerical => c"numerical",
        ZrStatus::Consistency => c"consistency",
        ZrStatus::Config => c"config",
        ZrStatus::NullPointer => c"null_pointer",
        ZrStatus::Panic => c"panic",
    };
    name.as_ptr()
}
