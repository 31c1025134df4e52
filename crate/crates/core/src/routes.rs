//! Independent evaluation routes for ζ and the cross-route comparator.
//!
//! | route              | formula                                                         | domain            |
//! |--------------------|-----------------------------------------------------------------|-------------------|
//! | `euler_even`       | `(-1)^{n-1} 2^{2n-1} B_{2n} π^{2n} / (2n)!`                      | `s = 2n`          |
//! | `integral_general` | `∫_0^∞ t^s e^{-t}/(1+e^{-t})² dt / (Γ(s+1)(1-2^{1-s}))`          | `s > 0, s ≠ 1`    |
//! | `integral_posint`  | same integrand, exact `n!`                                       | integer `n ≥ 2`   |
//! | `integral_halfint` | `2^n ∫_0^∞ x^{n-1/2} e^{-x}/(1+e^{-x})² dx / (√π (2n-1)!! (1-2^{-(2n-3)/2}))` | `s = n - 1/2` |
//! | `cotangent_odd`    | `(-1)^{n+1} (2π)^{2n+1}/(2(2n+1)!) ∫_0^1 B_{2n+1}(u) cot(πu) du`  | `s = 2n + 1 ≥ 3`  |
//! | `eta_series`       | accelerated alternating series                                   | `s > 0, s ≠ 1`    |
//! | `dirichlet_series` | `Σ n^{-s}` with midpoint tail                                    | `s > 1`           |
//!
//! Every integral is normalised so that the quadrature runs on a ζ-scale
//! quantity; the requested tolerance is then divided by whatever constant
//! still multiplies it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{self, BernoulliPolynomial};
use crate::dd::{self, DoubleDouble};
use crate::error::{Result, ZetaError};
use crate::quadrature::{integrate_finite, integrate_semi_infinite, QuadratureConfig, ValueWithError};
use crate::series::{self, check_pole, eta_factor, SeriesConfig};
use crate::special::{big_to_f64, factorial};

pub use crate::special::{double_factorial, gamma_real, ln_gamma_real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteId {
    EulerEven,
    IntegralGeneral,
    IntegralPosint,
    IntegralHalfint,
    CotangentOdd,
    EtaSeries,
    DirichletSeries,
}

impl RouteId {
    pub const ALL: [RouteId; 7] = [
        RouteId::EulerEven,
        RouteId::IntegralGeneral,
        RouteId::IntegralPosint,
        RouteId::IntegralHalfint,
        RouteId::CotangentOdd,
        RouteId::EtaSeries,
        RouteId::DirichletSeries,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RouteId::EulerEven => "euler_even",
            RouteId::IntegralGeneral => "integral_general",
            RouteId::IntegralPosint => "integral_posint",
            RouteId::IntegralHalfint => "integral_halfint",
            RouteId::CotangentOdd => "cotangent_odd",
            RouteId::EtaSeries => "eta_series",
            RouteId::DirichletSeries => "dirichlet_series",
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            RouteId::EulerEven => "even integer 2 <= s <= 256",
            RouteId::IntegralGeneral | RouteId::EtaSeries => "s > 0, s != 1",
            RouteId::IntegralPosint => "integer s >= 2",
            RouteId::IntegralHalfint => "s = n - 1/2 with integer n >= 1",
            RouteId::CotangentOdd => "odd integer s >= 3",
            RouteId::DirichletSeries => "s > 1",
        }
    }

    pub fn admits(self, s: f64) -> bool {
        if !s.is_finite() {
            return false;
        }
        let integer = s.fract() == 0.0;
        let off_pole = s > 0.0 && (s - 1.0).abs() > series::POLE_GUARD;
        match self {
            RouteId::EulerEven => {
                integer && s >= 2.0 && s <= bernoulli::DEFAULT_CAPACITY as f64 && s % 2.0 == 0.0
            }
            RouteId::IntegralGeneral | RouteId::EtaSeries => off_pole,
            RouteId::IntegralPosint => integer && s >= 2.0,
            RouteId::IntegralHalfint => s >= 0.5 && (s + 0.5).fract() == 0.0,
            RouteId::CotangentOdd => integer && s >= 3.0 && s % 2.0 == 1.0,
            RouteId::DirichletSeries => s > 1.0,
        }
    }

    /// Routes whose domain contains `s`, in canonical order.
    pub fn applicable(s: f64) -> Vec<RouteId> {
        RouteId::ALL.into_iter().filter(|r| r.admits(s)).collect()
    }
}

impl fmt::Display for RouteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RouteId {
    type Err = ZetaError;

    fn from_str(raw: &str) -> Result<Self> {
        let r = match raw.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "euler_even" | "euler" => RouteId::EulerEven,
            "integral_general" | "general" => RouteId::IntegralGeneral,
            "integral_posint" | "posint" => RouteId::IntegralPosint,
            "integral_halfint" | "halfint" => RouteId::IntegralHalfint,
            "cotangent_odd" | "cotangent" => RouteId::CotangentOdd,
            "eta_series" | "eta" => RouteId::EtaSeries,
            "dirichlet_series" | "dirichlet" => RouteId::DirichletSeries,
            _ => {
                return Err(ZetaError::Config(format!(
                    "unknown route {raw:?}; expected one of {}",
                    RouteId::ALL.map(|r| r.tag()).join(", ")
                )))
            }
        };
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteResult {
    pub route: RouteId,
    pub argument: f64,
    pub result: ValueWithError,
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RouteConfig {
    pub quadrature: QuadratureConfig,
    pub series: SeriesConfig,
}

impl RouteConfig {
    /// Same absolute tolerance for quadrature and series routes.
    pub fn with_tol(self, tol: f64) -> Self {
        RouteConfig {
            quadrature: self.quadrature.with_tol(tol),
            series: self.series.with_tol(tol),
        }
    }
}

fn integer_arg(operation: &'static str, s: f64, min: i64, domain: &'static str) -> Result<i64> {
    if s.fract() != 0.0 || s < min as f64 || !s.is_finite() {
        return Err(ZetaError::domain(operation, s, domain));
    }
    Ok(s as i64)
}

/// Runs `route` at `s`.
pub fn evaluate(route: RouteId, s: f64, cfg: &RouteConfig) -> Result<RouteResult> {
    let q = &cfg.quadrature;
    match route {
        RouteId::EulerEven => {
            if !route.admits(s) {
                return Err(ZetaError::domain("zeta_euler_even", s, route.domain()));
            }
            zeta_euler_even((s / 2.0) as u32)
        }
        RouteId::IntegralGeneral => zeta_integral_general(s, q),
        RouteId::IntegralPosint => {
            zeta_integral_posint(integer_arg("zeta_integral_posint", s, 2, route.domain())?, q)
        }
        RouteId::IntegralHalfint => {
            if !route.admits(s) {
                return Err(ZetaError::domain("zeta_integral_halfint", s, route.domain()));
            }
            zeta_integral_halfint((s + 0.5) as i64, q)
        }
        RouteId::CotangentOdd => {
            if !route.admits(s) {
                return Err(ZetaError::domain("zeta_cotangent_odd", s, route.domain()));
            }
            zeta_cotangent_odd(((s - 1.0) / 2.0) as i64, q)
        }
        RouteId::EtaSeries => Ok(RouteResult {
            route,
            argument: s,
            result: series::zeta_eta_accelerated(s, &cfg.series)?,
            notes: format!("{} accelerated alternating terms", series::ETA_TERMS),
        }),
        RouteId::DirichletSeries => {
            let result = series::zeta_dirichlet(s, &cfg.series)?;
            Ok(RouteResult {
                route,
                argument: s,
                notes: format!("{} terms + midpoint tail", result.evaluations),
                result,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Euler's closed form

/// Exact `ζ(2n) / π^{2n} = (-1)^{n-1} 2^{2n-1} B_{2n} / (2n)!`.
pub fn euler_even_coefficient(n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(ZetaError::domain("euler_even_coefficient", 0.0, "n >= 1"));
    }
    let b = bernoulli::bernoulli_number(2 * n as usize)?;
    let power = BigInt::one() << (2 * n - 1);
    let fact = BigInt::from(factorial(2 * n));
    let c = b * power / fact;
    Ok(if n % 2 == 1 { c } else { -c })
}

pub fn zeta_euler_even(n: u32) -> Result<RouteResult> {
    let coefficient = euler_even_coefficient(n)?;
    let exact = DoubleDouble::from_rational(&coefficient)
        .ok_or_else(|| ZetaError::Overflow(format!("coefficient of zeta({})", 2 * n)))?;
    let value = exact.mul(dd::PI.powi(2 * n)).to_f64();
    Ok(RouteResult {
        route: RouteId::EulerEven,
        argument: 2.0 * n as f64,
        result: ValueWithError::exact(value, 4.0 * f64::EPSILON * value.abs()),
        notes: format!("pi^{} * {}", 2 * n, bernoulli::format_rational(&coefficient)),
    })
}

// ---------------------------------------------------------------------------
// Integral representations

/// `t^s e^{-t} / (norm (1 + e^{-t})²)`, evaluated without overflow.
fn logistic_moment_kernel(s: f64, norm: f64, ln_norm: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        let e = (-t).exp();
        let denom = (1.0 + e) * (1.0 + e);
        let log_power = s * t.ln();
        let core = if norm.is_finite() && log_power < 700.0 && t < 700.0 {
            t.powf(s) * e / norm
        } else {
            (log_power - t - ln_norm).exp()
        };
        core / denom
    }
}

fn integral_route(
    s: f64,
    norm: f64,
    ln_norm: f64,
    cfg: &QuadratureConfig,
) -> Result<(ValueWithError, f64)> {
    let factor = eta_factor(s);
    let inner = cfg.with_tol(cfg.tol * factor.abs());
    let eta = integrate_semi_infinite(logistic_moment_kernel(s, norm, ln_norm), 0.0, &inner)?;
    let value = eta.value / factor;
    // exp/powf of arguments near ln_norm lose about eps * |ln_norm| relatively,
    // both in the normaliser and in the log-form kernel
    let rounding = 4.0 * f64::EPSILON * (1.0 + ln_norm.abs()) * value.abs();
    let abs_error = eta.abs_error / factor.abs() + rounding;
    Ok((
        ValueWithError {
            value,
            abs_error,
            converged: eta.converged,
            ..eta
        },
        eta.value,
    ))
}

pub fn zeta_integral_general(s: f64, cfg: &QuadratureConfig) -> Result<RouteResult> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(ZetaError::domain("zeta_integral_general", s, "s > 0, s != 1"));
    }
    check_pole("zeta_integral_general", s)?;
    let norm = gamma_real(s + 1.0)?;
    let ln_norm = ln_gamma_real(s + 1.0)?;
    let (result, eta) = integral_route(s, norm, ln_norm, cfg)?;
    Ok(RouteResult {
        route: RouteId::IntegralGeneral,
        argument: s,
        result,
        notes: format!("eta(s) by quadrature = {eta:.17e}"),
    })
}

pub fn zeta_integral_posint(n: i64, cfg: &QuadratureConfig) -> Result<RouteResult> {
    if n < 2 {
        return Err(ZetaError::domain("zeta_integral_posint", n as f64, "integer n >= 2"));
    }
    let exact = factorial(n as u32);
    let norm = big_to_f64(&exact);
    let ln_norm = if norm.is_finite() {
        norm.ln()
    } else {
        ln_gamma_real(n as f64 + 1.0)?
    };
    let s = n as f64;
    let (result, eta) = integral_route(s, norm, ln_norm, cfg)?;
    Ok(RouteResult {
        route: RouteId::IntegralPosint,
        argument: s,
        result,
        notes: format!("eta(n) by quadrature = {eta:.17e}"),
    })
}

/// `√π (2n-1)!! / 2^n`, i.e. `Γ(n + 1/2)` from exact integers.
fn halfint_norm(n: i64) -> Result<(f64, f64)> {
    let df = big_to_f64(&double_factorial(2 * n - 1)?);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let norm = sqrt_pi * df / 2f64.powi(n as i32);
    let ln_norm = if norm.is_finite() && norm > 0.0 {
        norm.ln()
    } else {
        ln_gamma_real(n as f64 + 0.5)?
    };
    Ok((norm, ln_norm))
}

/// `(ln y)^p / ((1+y)² e^{ln_norm})`, switching to logarithms before
/// either power overflows.
fn halfint_y_kernel(p: f64, ln_norm: f64) -> impl Fn(f64) -> f64 {
    let norm = ln_norm.exp();
    move |y: f64| {
        let ln_y = (y - 1.0).ln_1p();
        if y < 1e100 && p * ln_y.ln() < 600.0 && norm.is_finite() {
            ln_y.powf(p) / (1.0 + y) / (1.0 + y) / norm
        } else {
            (p * ln_y.ln() - 2.0 * y.ln() - 2.0 * (1.0 / y).ln_1p() - ln_norm).exp()
        }
    }
}

/// `∫_1^∞ (ln y)^{n-1/2} / (1+y)² dy`, the unsubstituted form.
pub fn halfint_y_integral(n: i64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if n < 1 {
        return Err(ZetaError::domain("halfint_y_integral", n as f64, "integer n >= 1"));
    }
    integrate_semi_infinite(halfint_y_kernel(n as f64 - 0.5, 0.0), 1.0, cfg)
}

/// `∫_0^∞ x^{n-1/2} e^{-x}/(1+e^{-x})² dx`, unnormalised.
pub fn halfint_x_integral(n: i64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if n < 1 {
        return Err(ZetaError::domain("halfint_x_integral", n as f64, "integer n >= 1"));
    }
    integrate_semi_infinite(logistic_moment_kernel(n as f64 - 0.5, 1.0, 0.0), 0.0, cfg)
}

/// Tolerance of the y-domain cross-check, relative to the integral.
const HALFINT_CHECK_TOL: f64 = 1e-8;

pub fn zeta_integral_halfint(n: i64, cfg: &QuadratureConfig) -> Result<RouteResult> {
    if n < 1 {
        return Err(ZetaError::domain("zeta_integral_halfint", n as f64, "integer n >= 1"));
    }
    let s = n as f64 - 0.5;
    let (norm, ln_norm) = halfint_norm(n)?;
    let (result, eta) = integral_route(s, norm, ln_norm, cfg)?;

    // the y-form check runs on the normalised scale so it survives Γ(s+1) overflow
    let check_cfg = cfg.with_tol(HALFINT_CHECK_TOL * eta.abs().max(1.0));
    let y_form = integrate_semi_infinite(halfint_y_kernel(s, ln_norm), 1.0, &check_cfg)?;
    let gap = (y_form.value - eta).abs();
    let allowed = y_form.abs_error + result.abs_error + HALFINT_CHECK_TOL * eta.abs().max(1.0);
    if gap > allowed {
        return Err(ZetaError::Consistency {
            what: format!("x- and y-domain integrals for zeta({s})"),
            gap,
            allowed,
        });
    }
    Ok(RouteResult {
        route: RouteId::IntegralHalfint,
        argument: s,
        result,
        notes: format!(
            "eta(s) by x-form = {eta:.17e}; y-form check = {:.17e} (gap {gap:.3e})",
            y_form.value
        ),
    })
}

// ---------------------------------------------------------------------------
// Cotangent integral

/// Integrands closer than this to 0 or 1 are replaced by their Taylor limit.
pub const COTANGENT_PATCH_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotangentSpan {
    /// `∫_0^{1/2}`
    Half,
    /// `∫_0^1`
    Full,
}

/// `cot(π u)`, reduced so that arguments near integers keep full accuracy.
fn cot_pi(u: f64) -> f64 {
    let r = u - u.round();
    let (sin, cos) = (std::f64::consts::PI * r).sin_cos();
    cos / sin
}

/// `B_{2n+1}(u) cot(πu)` with its removable singularities at 0 and 1 filled in.
pub struct CotangentIntegrand {
    poly: BernoulliPolynomial,
    limit: f64,
    slope: f64,
}

impl CotangentIntegrand {
    pub fn new(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(ZetaError::domain("cotangent integrand", n as f64, "integer n >= 1"));
        }
        let m = 2 * n as usize;
        let pi = std::f64::consts::PI;
        let b_even = bernoulli::bernoulli_number(m)?.to_f64().unwrap_or(f64::NAN);
        let b_odd = bernoulli::bernoulli_number(m - 1)?.to_f64().unwrap_or(f64::NAN);
        let c2 = ((m + 1) * m / 2) as f64;
        Ok(CotangentIntegrand {
            poly: BernoulliPolynomial::new(m + 1)?,
            limit: (m + 1) as f64 * b_even / pi,
            slope: c2 * b_odd / pi,
        })
    }

    /// Value as `u → 0⁺`: `(2n+1) B_{2n} / π`.
    pub fn limit_at_zero(&self) -> f64 {
        self.limit
    }

    pub fn eval(&self, u: f64) -> f64 {
        if u < COTANGENT_PATCH_RADIUS {
            self.limit + self.slope * u
        } else if u > 1.0 - COTANGENT_PATCH_RADIUS {
            let v = 1.0 - u;
            self.limit + self.slope * v
        } else {
            self.poly.eval(u) * cot_pi(u)
        }
    }
}

/// Raw `∫ B_{2n+1}(u) cot(πu) du` over the chosen span.
pub fn cotangent_integral(n: i64, span: CotangentSpan, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    let integrand = CotangentIntegrand::new(n)?;
    let upper = match span {
        CotangentSpan::Half => 0.5,
        CotangentSpan::Full => 1.0,
    };
    integrate_finite(|u| integrand.eval(u), 0.0, upper, cfg)
}

/// `(2π)^{2n+1} / (2n+1)!` in double-double, as a running product so that
/// neither factor has to be representable on its own.
fn cotangent_prefactor(n: i64) -> Result<f64> {
    let k = (2 * n + 1) as u32;
    let two_pi = dd::PI.mul_f64(2.0);
    let mut acc = DoubleDouble::ONE;
    for j in 1..=k {
        let inv = DoubleDouble::from_rational(&BigRational::new(BigInt::one(), BigInt::from(j)))
            .ok_or_else(|| ZetaError::Overflow(format!("1/{j}")))?;
        acc = acc.mul(two_pi).mul(inv);
    }
    Ok(acc.to_f64())
}

pub fn zeta_cotangent_odd(n: i64, cfg: &QuadratureConfig) -> Result<RouteResult> {
    if n < 1 {
        return Err(ZetaError::domain("zeta_cotangent_odd", n as f64, "integer n >= 1"));
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let prefactor = cotangent_prefactor(n)?;
    // ∫_0^1 = 2 ∫_0^{1/2}, which cancels the 1/2 in front
    let inner = cfg.with_tol(cfg.tol / prefactor);
    let half = cotangent_integral(n, CotangentSpan::Half, &inner)?;
    let scaled = half.scale(sign * prefactor);
    let result = ValueWithError {
        abs_error: scaled.abs_error + 4.0 * f64::EPSILON * scaled.value.abs(),
        ..scaled
    };
    Ok(RouteResult {
        route: RouteId::CotangentOdd,
        argument: (2 * n + 1) as f64,
        result,
        notes: format!("2 * integral over [0, 1/2] = {:.17e}", 2.0 * half.value),
    })
}

// ---------------------------------------------------------------------------
// Comparison

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub argument: f64,
    pub results: Vec<RouteResult>,
    pub max_pairwise_gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ComparisonReport {
    /// `max gap <= tolerance + the two largest reported errors`.
    pub fn allowance(&self) -> f64 {
        let mut errors: Vec<f64> = self.results.iter().map(|r| r.result.abs_error).collect();
        errors.sort_by(|a, b| b.total_cmp(a));
        self.tolerance + errors.iter().take(2).sum::<f64>()
    }
}

/// Deliberate corruption of one route, for exercising the comparator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultInjection {
    /// Route to corrupt; the first route in the report when `None`.
    pub route: Option<RouteId>,
    pub offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompareOptions {
    pub config: RouteConfig,
    pub fault: Option<FaultInjection>,
}

/// Runs every requested route (all applicable ones when `routes` is `None`)
/// concurrently and reports the largest pairwise disagreement.
pub fn compare_routes(
    s: f64,
    routes: Option<&[RouteId]>,
    tol: f64,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    if !(tol >= 0.0) {
        return Err(ZetaError::Config(format!("comparison tolerance must be non-negative, got {tol}")));
    }
    let mut selected: Vec<RouteId> = match routes {
        None => RouteId::applicable(s),
        Some(list) => {
            if let Some(bad) = list.iter().find(|r| !r.admits(s)) {
                return Err(ZetaError::Config(format!(
                    "route {bad} does not admit s = {s} (domain: {})",
                    bad.domain()
                )));
            }
            list.to_vec()
        }
    };
    selected.sort();
    selected.dedup();
    if selected.is_empty() {
        return Err(ZetaError::NoApplicableRoute { argument: s });
    }

    let cfg = options.config;
    let outcomes: Vec<Result<RouteResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&route| scope.spawn(move || evaluate(route, s, &cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("route evaluation panicked"))
            .collect()
    });
    let mut results = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    if let Some(fault) = options.fault {
        let target = fault.route.unwrap_or(results[0].route);
        let victim = results
            .iter_mut()
            .find(|r| r.route == target)
            .ok_or_else(|| ZetaError::Config(format!("fault target {target} is not part of the comparison")))?;
        victim.result.value += fault.offset;
        victim.notes = format!("{} [fault injected: {:+e}]", victim.notes, fault.offset);
    }

    let mut gap: f64 = 0.0;
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            gap = gap.max((a.result.value - b.result.value).abs());
        }
    }
    let mut report = ComparisonReport {
        argument: s,
        results,
        max_pairwise_gap: gap,
        tolerance: tol,
        pass: false,
    };
    report.pass = report.max_pairwise_gap <= report.allowance();
    Ok(report)
}

/// Default route for a single evaluation: Euler's closed form at even
/// integers, the eta series everywhere else.
pub fn default_route(s: f64) -> RouteId {
    if RouteId::EulerEven.admits(s) {
        RouteId::EulerEven
    } else {
        RouteId::EtaSeries
    }
}
