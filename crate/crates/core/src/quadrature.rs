//! Double-exponential quadrature on finite and semi-infinite intervals.
//!
//! Finite intervals use the tanh-sinh map, `[a, ∞)` uses exp-sinh. Both are
//! trapezoidal sums in the transformed variable with the step halved at
//! every level; only the new (odd) nodes are evaluated on refinement. The
//! error estimate is the change between consecutive levels.
//!
//! Abscissae are generated as *distances* from the endpoints, so nodes
//! cluster arbitrarily close to `a` (down to the subnormal range when
//! `a = 0`) but never coincide with it. This is what lets integrable
//! endpoint singularities like `t^{-1/2}` through without special casing.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};

/// Environment variable that overrides [`QuadratureConfig::max_evals`].
pub const MAX_EVALS_ENV: &str = "ZETA_ROUTES_MAX_EVALS";

/// A value paired with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueWithError {
    pub value: f64,
    pub abs_error: f64,
    /// Integrand calls (quadrature) or terms summed (series).
    pub evaluations: usize,
    /// Refinement levels used; zero for non-iterative results.
    pub levels: u32,
    pub converged: bool,
}

impl ValueWithError {
    pub fn exact(value: f64, abs_error: f64) -> Self {
        ValueWithError {
            value,
            abs_error,
            evaluations: 0,
            levels: 0,
            converged: true,
        }
    }

    /// Multiplies by a constant, scaling the error bound with it.
    pub fn scale(self, k: f64) -> Self {
        ValueWithError {
            value: self.value * k,
            abs_error: self.abs_error * k.abs(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the reported error.
    pub tol: f64,
    pub max_level: u32,
    pub max_evals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-12,
            max_level: 12,
            max_evals: 1 << 20,
        }
    }
}

impl QuadratureConfig {
    pub fn new(tol: f64, max_level: u32, max_evals: usize) -> Result<Self> {
        let cfg = QuadratureConfig {
            tol,
            max_level,
            max_evals,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(self, tol: f64) -> Self {
        QuadratureConfig { tol, ..self }
    }

    /// Default configuration, honouring [`MAX_EVALS_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = QuadratureConfig::default();
        if let Ok(raw) = std::env::var(MAX_EVALS_ENV) {
            cfg.max_evals = raw.trim().parse().map_err(|_| {
                ZetaError::Config(format!("{MAX_EVALS_ENV}={raw:?} is not a positive integer"))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(ZetaError::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_level < 1 {
            return Err(ZetaError::Config("max_level must be at least 1".into()));
        }
        if self.max_evals == 0 {
            return Err(ZetaError::Config("max_evals must be positive".into()));
        }
        Ok(())
    }
}

// Levels below this never report convergence.
const MIN_LEVEL: u32 = 3;
// Largest |t| ever sampled.
const T_CAP: f64 = 7.0;
// The coarse level stops a side after two consecutive terms below this
// fraction of sum |w f|; that point bounds every finer level.
const TAIL_RATIO: f64 = 1e-30;
// Roundoff floor, in units of eps * h * sum |w f|.
const NOISE_ULPS: f64 = 32.0;

#[derive(Clone, Copy)]
struct Node {
    x: f64,
    w: f64,
}

trait DeMap {
    fn center(&self) -> Node;
    /// Node at `t > 0` on the right (`right = true`) or left branch;
    /// `None` once the branch has run out of representable abscissae.
    fn node(&self, t: f64, right: bool) -> Option<Node>;
    fn checks_decay(&self) -> bool {
        false
    }
}

struct TanhSinh {
    a: f64,
    b: f64,
    half: f64,
}

impl DeMap for TanhSinh {
    fn center(&self) -> Node {
        Node {
            x: self.a + self.half,
            w: self.half * FRAC_PI_2,
        }
    }

    fn node(&self, t: f64, right: bool) -> Option<Node> {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        let delta = 2.0 * self.half * e / (1.0 + e);
        let w = self.half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if !(delta > 0.0) || !(w > 0.0) {
            return None;
        }
        let x = if right { self.b - delta } else { self.a + delta };
        (x > self.a && x < self.b).then_some(Node { x, w })
    }
}

struct ExpSinh {
    a: f64,
}

impl DeMap for ExpSinh {
    fn center(&self) -> Node {
        Node {
            x: self.a + 1.0,
            w: FRAC_PI_2,
        }
    }

    fn node(&self, t: f64, right: bool) -> Option<Node> {
        let v = FRAC_PI_2 * t.sinh();
        let e = if right { v.exp() } else { (-v).exp() };
        let x = self.a + e;
        let w = FRAC_PI_2 * t.cosh() * e;
        (e > 0.0 && x.is_finite() && w.is_finite() && x > self.a).then_some(Node { x, w })
    }

    fn checks_decay(&self) -> bool {
        true
    }
}

struct Branch {
    right: bool,
    // no node beyond this t is ever sampled again
    limit: f64,
}

fn eval_at<F: Fn(f64) -> f64>(f: &F, node: Node) -> Result<f64> {
    let y = f(node.x);
    if !y.is_finite() {
        return Err(ZetaError::NonFinite {
            abscissa: node.x,
            value: y,
        });
    }
    let term = node.w * y;
    if !term.is_finite() {
        return Err(ZetaError::NonDecay {
            abscissa: node.x,
            term,
        });
    }
    Ok(term)
}

/// Largest `t` in `[good, bad)` that still maps to a node, by bisection.
fn last_node<M: DeMap>(map: &M, mut good: f64, mut bad: f64, right: bool) -> f64 {
    if map.node(good, right).is_none() {
        return good;
    }
    for _ in 0..60 {
        let mid = 0.5 * (good + bad);
        if map.node(mid, right).is_some() {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

fn run<M: DeMap, F: Fn(f64) -> f64>(map: &M, f: &F, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    cfg.validate()?;
    let mut branches = [
        Branch { right: false, limit: T_CAP },
        Branch { right: true, limit: T_CAP },
    ];

    let mut evaluations = 0usize;
    let centre = eval_at(f, map.center())?;
    evaluations += 1;
    let mut sum = centre;
    let mut l1 = centre.abs();

    let mut previous: Option<f64> = None;
    let mut best = ValueWithError {
        value: f64::NAN,
        abs_error: f64::INFINITY,
        evaluations,
        levels: 0,
        converged: false,
    };

    for level in 0..=cfg.max_level {
        let h = 0.5f64.powi(level as i32);
        let (start, stride) = if level == 0 { (1.0, 1.0) } else { (h, 2.0 * h) };
        let mut level_sum = 0.0;
        let mut level_l1 = 0.0;
        let mut level_evals = 0usize;
        let mut budget_hit = false;

        for branch in branches.iter_mut() {
            let mut k = 0u64;
            let mut quiet = 0;
            let mut last_term = 0.0;
            let mut exhausted = false;
            loop {
                let t = start + stride * k as f64;
                k += 1;
                if t > branch.limit {
                    break;
                }
                if evaluations + level_evals >= cfg.max_evals {
                    budget_hit = true;
                    break;
                }
                let Some(node) = map.node(t, branch.right) else {
                    if level == 0 {
                        let edge = last_node(map, t - stride, t, branch.right);
                        branch.limit = edge;
                        if branch.right && map.checks_decay() {
                            // decay is judged at the outermost representable node
                            if let Some(probe) = map.node(edge, true) {
                                last_term = eval_at(f, probe)?;
                                level_evals += 1;
                            }
                        }
                    }
                    exhausted = branch.right;
                    break;
                };
                let term = eval_at(f, node)?;
                level_evals += 1;
                level_sum += term;
                level_l1 += term.abs();
                last_term = term;
                // the cut-off is fixed on the coarse outward walk; finer levels
                // run to it, since their inner terms can be small next to a far peak
                if level == 0 {
                    if term.abs() <= TAIL_RATIO * (l1 + level_l1) {
                        quiet += 1;
                        if quiet >= 2 {
                            branch.limit = t;
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                if level == 0 && t + 1.0 > T_CAP {
                    exhausted = branch.right;
                }
            }
            if budget_hit {
                break;
            }
            if map.checks_decay() && exhausted && last_term.abs() > 1e-10 * (l1 + level_l1) {
                let x = map.node(branch.limit.min(T_CAP), true).map_or(f64::INFINITY, |n| n.x);
                return Err(ZetaError::NonDecay {
                    abscissa: x,
                    term: last_term,
                });
            }
        }

        if budget_hit {
            best.evaluations = evaluations + level_evals;
            break;
        }

        evaluations += level_evals;
        sum += level_sum;
        l1 += level_l1;
        let estimate = h * sum;
        let noise = NOISE_ULPS * f64::EPSILON * h * l1;
        let diff = previous.map_or(f64::INFINITY, |p| (estimate - p).abs());
        let abs_error = diff.max(noise);
        best = ValueWithError {
            value: estimate,
            abs_error,
            evaluations,
            levels: level,
            converged: false,
        };
        if level >= MIN_LEVEL && abs_error <= cfg.tol.max(noise) {
            best.converged = true;
            break;
        }
        previous = Some(estimate);
    }
    Ok(best)
}

/// `∫_a^b f` by tanh-sinh. `f` is only ever called on the open interval.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(ZetaError::Config(format!(
            "integrate_finite needs finite a < b, got [{a}, {b}]"
        )));
    }
    let map = TanhSinh {
        a,
        b,
        half: 0.5 * (b - a),
    };
    run(&map, &f, cfg)
}

/// `∫_a^∞ f` by exp-sinh. `f` is only ever called on `(a, ∞)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if !a.is_finite() {
        return Err(ZetaError::Config(format!(
            "integrate_semi_infinite needs a finite lower limit, got {a}"
        )));
    }
    run(&ExpSinh { a }, &f, cfg)
}

/// `∫_{-∞}^{∞} f`, folded onto `(0, ∞)` as `f(x) + f(-x)`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    integrate_semi_infinite(|x| f(x) + f(-x), 0.0, cfg)
}

/// Truncated fallback for `∫_a^∞ f`: tanh-sinh on `[a, a + 60 max(1, scale)]`.
///
/// Only meaningful for integrands that decay at least like `e^{-x/scale}`.
pub fn integrate_truncated<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    integrate_finite(f, a, a + 60.0 * scale.max(1.0), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn logistic_kernel(x: f64) -> f64 {
        let e = (-x).exp();
        e / ((1.0 + e) * (1.0 + e))
    }

    #[test]
    fn constant_on_unit_interval() {
        let r = integrate_finite(|_| 1.0, 0.0, 1.0, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() <= r.abs_error.max(1e-15));
        assert!(r.abs_error <= 1e-12);
    }

    #[test]
    fn truncated_mean_of_logistic_kernel() {
        let r = integrate_finite(|x| x * logistic_kernel(x), 0.0, 60.0, &cfg()).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-10, "{}", r.value);
        let t = integrate_truncated(|x| x * logistic_kernel(x), 0.0, 1.0, &cfg()).unwrap();
        assert_eq!(t.value, r.value);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t| (-t).exp(), 0.0, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-13);
        let shifted = integrate_semi_infinite(|t| (-t).exp(), 2.0, &cfg()).unwrap();
        assert!((shifted.value - (-2.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn second_moment_of_logistic_kernel() {
        let r = integrate_semi_infinite(|t| t * t * logistic_kernel(t), 0.0, &cfg()).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-10);
    }

    #[test]
    fn inverse_square_root_singularity() {
        // ∫_0^1 x^{-1/2} = 2
        let r = integrate_finite(|x| x.powf(-0.5), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
        // Γ(1/2) = sqrt(pi)
        let g = integrate_semi_infinite(|t| t.powf(-0.5) * (-t).exp(), 0.0, &cfg()).unwrap();
        assert!((g.value - PI.sqrt()).abs() < 1e-10, "{}", g.value);
    }

    #[test]
    fn algebraic_decay() {
        // ∫_1^∞ y^-2 = 1
        let r = integrate_semi_infinite(|y| 1.0 / (y * y), 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn real_line_gaussian() {
        let r = integrate_real_line(|x| (-x * x).exp(), &cfg()).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn endpoints_never_sampled() {
        let seen = RefCell::new(Vec::new());
        let (a, b) = (0.0, 0.5);
        integrate_finite(
            |x| {
                seen.borrow_mut().push(x);
                (1.0 / x).ln()
            },
            a,
            b,
            &cfg(),
        )
        .unwrap();
        let xs = seen.borrow();
        assert!(xs.len() > 20);
        assert!(xs.iter().all(|&x| x > a && x < b));
        assert!(xs.iter().any(|&x| x < 1e-100), "nodes should crowd the singular end");

        let seen = RefCell::new(Vec::new());
        integrate_finite(
            |x| {
                seen.borrow_mut().push(x);
                x
            },
            1.0,
            3.0,
            &cfg(),
        )
        .unwrap();
        assert!(seen.borrow().iter().all(|&x| x > 1.0 && x < 3.0));

        let seen = RefCell::new(Vec::new());
        integrate_semi_infinite(
            |x| {
                seen.borrow_mut().push(x);
                (-x).exp() / x.sqrt()
            },
            0.0,
            &cfg(),
        )
        .unwrap();
        assert!(seen.borrow().iter().all(|&x| x > 0.0 && x.is_finite()));
    }

    #[test]
    fn non_finite_sample_is_located() {
        let err = integrate_finite(|x| if x > 0.7 { f64::NAN } else { x }, 0.0, 1.0, &cfg()).unwrap_err();
        match err {
            ZetaError::NonFinite { abscissa, value } => {
                assert!(abscissa > 0.7);
                assert!(value.is_nan());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_decaying_integrand_is_flagged() {
        let err = integrate_semi_infinite(|_| 1.0, 0.0, &cfg()).unwrap_err();
        assert!(matches!(err, ZetaError::NonDecay { .. }), "{err:?}");
        let err = integrate_semi_infinite(|x| 1.0 / x.sqrt().max(1.0), 0.0, &cfg()).unwrap_err();
        assert!(matches!(err, ZetaError::NonDecay { .. }), "{err:?}");
    }

    #[test]
    fn budget_exhaustion_reports_unconverged() {
        let tight = QuadratureConfig::new(1e-15, 12, 200).unwrap();
        let r = integrate_finite(|x| (x - 1.0 / 3.0).abs().sqrt(), 0.0, 1.0, &tight).unwrap();
        assert!(!r.converged);
        assert!(r.evaluations <= 200);
        assert!(r.value.is_finite());
    }

    #[test]
    fn bad_configs_rejected() {
        assert!(QuadratureConfig::new(0.0, 5, 10).is_err());
        assert!(QuadratureConfig::new(1e-8, 0, 10).is_err());
        assert!(QuadratureConfig::new(1e-8, 5, 0).is_err());
        assert!(integrate_finite(|x| x, 1.0, 1.0, &cfg()).is_err());
        assert!(integrate_semi_infinite(|x| x, f64::NEG_INFINITY, &cfg()).is_err());
    }

    #[test]
    fn refinement_is_monotone_on_standard_set() {
        let set: Vec<(Box<dyn Fn(f64) -> f64>, bool)> = vec![
            (Box::new(|x: f64| x.exp()), false),
            (Box::new(|x: f64| 1.0 / (1.0 + x * x)), false),
            (Box::new(|x: f64| x.powf(-0.5)), false),
            (Box::new(|x: f64| x * x * logistic_kernel(x)), true),
            (Box::new(|x: f64| x.powf(-0.5) * logistic_kernel(x)), true),
        ];
        for (i, (f, semi)) in set.iter().enumerate() {
            let mut last = f64::INFINITY;
            let mut tol = 1e-3;
            while tol > 1e-13 {
                let c = cfg().with_tol(tol);
                let r = if *semi {
                    integrate_semi_infinite(f, 0.0, &c).unwrap()
                } else {
                    integrate_finite(f, 0.0, 1.0, &c).unwrap()
                };
                assert!(r.abs_error <= last, "integrand {i}, tol {tol:e}: {} > {last}", r.abs_error);
                if r.converged {
                    assert!(r.abs_error <= tol.max(NOISE_ULPS * f64::EPSILON * r.value.abs() * 2.0));
                }
                last = r.abs_error;
                tol /= 2.0;
            }
        }
    }

    #[test]
    fn env_override() {
        // run in one test to avoid racing other env readers
        std::env::set_var(MAX_EVALS_ENV, "777");
        assert_eq!(QuadratureConfig::from_env().unwrap().max_evals, 777);
        std::env::set_var(MAX_EVALS_ENV, "lots");
        assert!(QuadratureConfig::from_env().is_err());
        std::env::remove_var(MAX_EVALS_ENV);
        assert_eq!(QuadratureConfig::from_env().unwrap().max_evals, 1 << 20);
    }
}
