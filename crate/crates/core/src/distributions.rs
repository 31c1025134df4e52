//! Logistic, half-logistic and one-dimensional elliptically symmetric
//! logistic laws: densities, generating functions, closed-form moments,
//! seeded samplers and Monte Carlo moment estimators.
//!
//! The closed-form moments are all ζ values in disguise:
//!
//! * half-logistic: `E X = 2 ln 2`, `E X^n = 2 n! (1 - 2^{1-n}) ζ(n)` for `n ≥ 2`;
//! * logistic: odd moments vanish, even moments equal the half-logistic ones;
//! * elliptic logistic: `E X^{2m} = √π c (2m)! / (4^m m!) (1 - 2^{-(2m-3)/2}) ζ(m - 1/2)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::quadrature::{integrate_finite, integrate_real_line, integrate_semi_infinite, QuadratureConfig, ValueWithError};
use crate::routes::zeta_euler_even;
use crate::series::{eta_factor, zeta_eta_accelerated, SeriesConfig};
use crate::special::{big_to_f64, factorial};

/// Name and version of the generator behind every seeded stream.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    Logistic,
    HalfLogistic,
    EllipticLogistic,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 3] = [
        DistributionKind::Logistic,
        DistributionKind::HalfLogistic,
        DistributionKind::EllipticLogistic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DistributionKind::Logistic => "logistic",
            DistributionKind::HalfLogistic => "half_logistic",
            DistributionKind::EllipticLogistic => "elliptic_logistic",
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DistributionKind {
    type Err = ZetaError;

    fn from_str(raw: &str) -> Result<Self> {
        match raw.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "logistic" => Ok(DistributionKind::Logistic),
            "half_logistic" | "halflogistic" => Ok(DistributionKind::HalfLogistic),
            "elliptic_logistic" | "elliptic" => Ok(DistributionKind::EllipticLogistic),
            _ => Err(ZetaError::Config(format!(
                "unknown distribution {raw:?}; expected logistic, half_logistic or elliptic_logistic"
            ))),
        }
    }
}

/// One of the three laws, with its normalisation constant when it has one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    kind: DistributionKind,
    c: Option<f64>,
}

impl DistributionSpec {
    pub fn logistic() -> Self {
        DistributionSpec {
            kind: DistributionKind::Logistic,
            c: None,
        }
    }

    pub fn half_logistic() -> Self {
        DistributionSpec {
            kind: DistributionKind::HalfLogistic,
            c: None,
        }
    }

    /// Elliptic logistic law with `c` from the shared cached computation.
    pub fn elliptic_logistic() -> Result<Self> {
        Ok(DistributionSpec {
            kind: DistributionKind::EllipticLogistic,
            c: Some(shared_elliptic_constant()?),
        })
    }

    /// Elliptic logistic law with `c` computed under `cfg`.
    pub fn elliptic_logistic_with(cfg: &QuadratureConfig) -> Result<Self> {
        Ok(DistributionSpec {
            kind: DistributionKind::EllipticLogistic,
            c: Some(elliptic_constant(cfg)?),
        })
    }

    pub fn new(kind: DistributionKind) -> Result<Self> {
        match kind {
            DistributionKind::Logistic => Ok(Self::logistic()),
            DistributionKind::HalfLogistic => Ok(Self::half_logistic()),
            DistributionKind::EllipticLogistic => Self::elliptic_logistic(),
        }
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    fn c_or_nan(&self) -> f64 {
        self.c.unwrap_or(f64::NAN)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        pdf(self, x)
    }

    /// Lower end of the support.
    pub fn support_start(&self) -> f64 {
        match self.kind {
            DistributionKind::HalfLogistic => 0.0,
            _ => f64::NEG_INFINITY,
        }
    }

    /// Cumulative distribution function. The elliptic law has no closed
    /// form; its CDF is integrated from 0 with `cfg`.
    pub fn cdf(&self, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(match self.kind {
            DistributionKind::Logistic => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
            DistributionKind::HalfLogistic => {
                if x <= 0.0 {
                    0.0
                } else {
                    (0.5 * x).tanh()
                }
            }
            DistributionKind::EllipticLogistic => {
                if x == 0.0 {
                    0.5
                } else {
                    let half = integrate_finite(|u| self.pdf(u), 0.0, x.abs(), cfg)?.value;
                    0.5 + half.copysign(x)
                }
            }
        })
    }

    /// Inverse CDF for the two laws that have one in closed form.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(ZetaError::domain("quantile", p, "0 < p < 1"));
        }
        match self.kind {
            DistributionKind::Logistic => Ok((p / (1.0 - p)).ln()),
            DistributionKind::HalfLogistic => Ok(((1.0 + p) / (1.0 - p)).ln()),
            DistributionKind::EllipticLogistic => Err(ZetaError::Config(
                "elliptic_logistic has no closed-form quantile; it is sampled by rejection".into(),
            )),
        }
    }

    /// `E X^k` in closed form.
    pub fn closed_moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Ok(1.0);
        }
        match self.kind {
            DistributionKind::HalfLogistic => halflogistic_moment(k),
            DistributionKind::Logistic if k % 2 == 1 => Ok(0.0),
            DistributionKind::Logistic => halflogistic_moment(k),
            DistributionKind::EllipticLogistic if k % 2 == 1 => Ok(0.0),
            DistributionKind::EllipticLogistic => elliptic_moment_even(k / 2, self.c_or_nan()),
        }
    }
}

/// `e^{-|x|} / (1 + e^{-|x|})²`, the symmetric logistic kernel.
fn logistic_kernel(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// Density at `x`. The half-logistic density is 0 below its support.
pub fn pdf(spec: &DistributionSpec, x: f64) -> f64 {
    match spec.kind {
        DistributionKind::Logistic => logistic_kernel(x),
        DistributionKind::HalfLogistic => {
            if x < 0.0 {
                0.0
            } else {
                2.0 * logistic_kernel(x)
            }
        }
        DistributionKind::EllipticLogistic => spec.c_or_nan() * logistic_kernel(x * x),
    }
}

// ---------------------------------------------------------------------------
// The elliptic normalising constant

/// Agreement demanded between the two parameterisations of `1/c`.
pub const ELLIPTIC_AGREEMENT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticConstant {
    pub c: f64,
    /// `∫_0^∞ t^{-1/2} e^{-t} / (1+e^{-t})² dt`
    pub t_form: ValueWithError,
    /// `2 ∫_0^∞ e^{-u²} / (1+e^{-u²})² du`
    pub u_form: ValueWithError,
}

/// `1/c` in the original variable; the integrand carries a `t^{-1/2}`
/// endpoint singularity.
pub fn elliptic_inverse_constant_t(cfg: &QuadratureConfig) -> Result<ValueWithError> {
    integrate_semi_infinite(|t| logistic_kernel(t) / t.sqrt(), 0.0, cfg)
}

/// `1/c` after `t = u²`; the integrand is smooth.
pub fn elliptic_inverse_constant_u(cfg: &QuadratureConfig) -> Result<ValueWithError> {
    Ok(integrate_semi_infinite(|u| logistic_kernel(u * u), 0.0, cfg)?.scale(2.0))
}

/// Both parameterisations of `1/c`, checked against each other.
pub fn elliptic_constant_detail(cfg: &QuadratureConfig) -> Result<EllipticConstant> {
    let t_form = elliptic_inverse_constant_t(cfg)?;
    let u_form = elliptic_inverse_constant_u(cfg)?;
    let gap = (t_form.value - u_form.value).abs();
    if gap > ELLIPTIC_AGREEMENT {
        return Err(ZetaError::Consistency {
            what: "t- and u-parameterised integrals for 1/c".into(),
            gap,
            allowed: ELLIPTIC_AGREEMENT,
        });
    }
    Ok(EllipticConstant {
        c: 1.0 / t_form.value,
        t_form,
        u_form,
    })
}

/// The normalising constant `c` of the elliptic logistic density.
///
/// Quadrature is the only practical route: the termwise series for `1/c`
/// is `√π Σ (-1)^{k-1} k^{1/2}`, which diverges.
pub fn elliptic_constant(cfg: &QuadratureConfig) -> Result<f64> {
    Ok(elliptic_constant_detail(cfg)?.c)
}

fn shared_elliptic_constant() -> Result<f64> {
    static C: OnceLock<Result<f64>> = OnceLock::new();
    C.get_or_init(|| elliptic_constant(&QuadratureConfig::default()))
        .clone()
}

// ---------------------------------------------------------------------------
// Generating functions

/// `E e^{tX} = πt / sin(πt)` for the logistic law, `|t| < 1`.
pub fn mgf_logistic_closed(t: f64) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(ZetaError::domain("mgf_logistic_closed", t, "|t| < 1"));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let x = std::f64::consts::PI * t;
    Ok(x / x.sin())
}

/// Coefficient of `t^{2n}` in the logistic MGF: `(2^{2n-1} - 1) ζ(2n) / 2^{2(n-1)}`.
pub fn mgf_logistic_coefficient(n: u32) -> Result<f64> {
    let zeta = zeta_euler_even(n)?.result.value;
    let ratio = 2.0 - 4f64.powi(1 - n as i32);
    Ok(ratio * zeta)
}

/// `1 + Σ_{n=1}^{n_terms} (2^{2n-1} - 1) ζ(2n) / 2^{2(n-1)} t^{2n}`.
pub fn mgf_logistic_series(t: f64, n_terms: u32) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(ZetaError::domain("mgf_logistic_series", t, "|t| < 1"));
    }
    if n_terms == 0 {
        return Err(ZetaError::domain("mgf_logistic_series", 0.0, "n_terms >= 1"));
    }
    let t2 = t * t;
    let mut power = 1.0;
    let mut sum = 1.0;
    for n in 1..=n_terms {
        power *= t2;
        sum += mgf_logistic_coefficient(n)? * power;
    }
    Ok(sum)
}

/// `∫ e^{tx} f(x) dx` for the logistic density, by quadrature.
pub fn mgf_logistic_quadrature(t: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if !(t.abs() < 1.0) {
        return Err(ZetaError::domain("mgf_logistic_quadrature", t, "|t| < 1"));
    }
    integrate_real_line(
        |x| {
            let e = (-x.abs()).exp();
            (t * x - x.abs()).exp() / ((1.0 + e) * (1.0 + e))
        },
        cfg,
    )
}

/// Half-logistic MGF as a power series,
/// `1 + 2t ln 2 + 2 Σ_{k≥2} (1 - 2^{1-k}) ζ(k) t^k`.
pub fn mgf_halflogistic_series(t: f64, n_terms: u32) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(ZetaError::domain("mgf_halflogistic_series", t, "|t| < 1"));
    }
    if n_terms == 0 {
        return Err(ZetaError::domain("mgf_halflogistic_series", 0.0, "n_terms >= 1"));
    }
    let mut sum = 1.0 + 2.0 * t * std::f64::consts::LN_2;
    let mut power = t;
    for k in 2..=n_terms {
        power *= t;
        sum += 2.0 * eta_factor(k as f64) * zeta_at_integer(k)? * power;
    }
    Ok(sum)
}

/// `2 ∫_0^∞ e^{tx} e^{-x}/(1+e^{-x})² dx`, by quadrature.
pub fn mgf_halflogistic_quadrature(t: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    if !(t.abs() < 1.0) {
        return Err(ZetaError::domain("mgf_halflogistic_quadrature", t, "|t| < 1"));
    }
    Ok(integrate_semi_infinite(|x| ((t - 1.0) * x).exp() / (1.0 + (-x).exp()).powi(2), 0.0, cfg)?.scale(2.0))
}

/// Power of two dividing the `n`-th term of the elliptic CF series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfScaling {
    /// `2^{2n}`, as produced by the even-moment formula.
    EvenMoment,
    /// `2^{2n+1}`, the variant that appears in the lemma statement.
    Published,
}

/// `1 + Σ_{n=1}^{n_terms} (-1)^n c√π / 2^{2n} · t^{2n}/n! · (1 - 2^{-(2n-3)/2}) ζ(n - 1/2)`.
pub fn cf_elliptic_series(t: f64, n_terms: u32, c: f64, scaling: CfScaling) -> Result<f64> {
    let cfg = SeriesConfig::default();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let t2 = t * t;
    let mut sum = 1.0;
    // (t²/4)^n / n!, built up incrementally
    let mut ratio = 1.0;
    for n in 1..=n_terms {
        ratio *= t2 / 4.0 / n as f64;
        let s = n as f64 - 0.5;
        let zeta = zeta_eta_accelerated(s, &cfg)?.value;
        let mut term = c * sqrt_pi * ratio * eta_factor(s) * zeta;
        if scaling == CfScaling::Published {
            term *= 0.5;
        }
        if n % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    Ok(sum)
}

/// `E cos(tX) = 2c ∫_0^∞ cos(tx) e^{-x²}/(1+e^{-x²})² dx`, by quadrature.
pub fn cf_elliptic_quadrature(t: f64, c: f64, cfg: &QuadratureConfig) -> Result<ValueWithError> {
    Ok(integrate_semi_infinite(|x| (t * x).cos() * logistic_kernel(x * x), 0.0, cfg)?.scale(2.0 * c))
}

// ---------------------------------------------------------------------------
// Closed-form moments

/// ζ at an integer `k ≥ 2`: Euler's closed form for even `k`, the eta
/// series otherwise.
fn zeta_at_integer(k: u32) -> Result<f64> {
    if k % 2 == 0 && k <= 256 {
        Ok(zeta_euler_even(k / 2)?.result.value)
    } else {
        Ok(zeta_eta_accelerated(k as f64, &SeriesConfig::default())?.value)
    }
}

/// `E X^n` for the half-logistic law.
pub fn halflogistic_moment(n: u32) -> Result<f64> {
    match n {
        0 => Ok(1.0),
        1 => Ok(2.0 * std::f64::consts::LN_2),
        _ => {
            let fact = big_to_f64(&factorial(n));
            Ok(2.0 * fact * eta_factor(n as f64) * zeta_at_integer(n)?)
        }
    }
}

/// `E X^{2m}` for the elliptic logistic law with constant `c`.
pub fn elliptic_moment_even(m: u32, c: f64) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    let s = m as f64 - 0.5;
    let zeta = zeta_eta_accelerated(s, &SeriesConfig::default())?.value;
    let fact_ratio = big_to_f64(&(factorial(2 * m) / factorial(m)));
    let sqrt_pi = std::f64::consts::PI.sqrt();
    Ok(sqrt_pi * c / 4f64.powi(m as i32) * fact_ratio * eta_factor(s) * zeta)
}

// ---------------------------------------------------------------------------
// Sampling

/// Seeded sampler owning its generator state.
#[derive(Debug, Clone)]
pub struct Sampler {
    spec: DistributionSpec,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(spec: DistributionSpec, seed: u64) -> Self {
        Sampler {
            spec,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn draw(&mut self) -> f64 {
        match self.spec.kind {
            DistributionKind::Logistic => {
                let p: f64 = self.rng.sample(Open01);
                (p / (1.0 - p)).ln()
            }
            DistributionKind::HalfLogistic => {
                let p: f64 = self.rng.sample(Open01);
                ((1.0 + p) / (1.0 - p)).ln()
            }
            DistributionKind::EllipticLogistic => loop {
                // proposal ∝ e^{-x²}, accepted with probability 1/(1+e^{-x²})² >= 1/4
                let z: f64 = self.rng.sample(StandardNormal);
                let x = z * std::f64::consts::FRAC_1_SQRT_2;
                let e = (-x * x).exp();
                let accept = 1.0 / ((1.0 + e) * (1.0 + e));
                let u: f64 = self.rng.sample(Open01);
                if u < accept {
                    break x;
                }
            },
        }
    }
}

pub fn sample(spec: &DistributionSpec, seed: u64, n: usize) -> Vec<f64> {
    let mut sampler = Sampler::new(*spec, seed);
    (0..n).map(|_| sampler.draw()).collect()
}

/// Minimum sample size accepted by the Monte Carlo estimators.
pub const MIN_MC_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub order: u32,
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Standardised distance from `target`.
    pub fn z_score(&self, target: f64) -> f64 {
        let d = self.mean - target;
        if self.stderr > 0.0 {
            d / self.stderr
        } else if d == 0.0 {
            0.0
        } else {
            d.signum() * f64::INFINITY
        }
    }
}

/// Sample estimates of `E X^k` for `k = 1..=max_order`, all from one stream.
pub fn mc_moments(spec: &DistributionSpec, max_order: u32, seed: u64, n: usize) -> Result<Vec<McEstimate>> {
    if n < MIN_MC_SAMPLES {
        return Err(ZetaError::domain("mc_moment", n as f64, "n >= 1000"));
    }
    if max_order == 0 {
        return Err(ZetaError::domain("mc_moment", 0.0, "moment order >= 1"));
    }
    let orders = max_order as usize;
    // Welford accumulators per order
    let mut mean = vec![0.0; orders];
    let mut m2 = vec![0.0; orders];
    let mut sampler = Sampler::new(*spec, seed);
    for i in 0..n {
        let x = sampler.draw();
        let mut power = 1.0;
        let count = (i + 1) as f64;
        for k in 0..orders {
            power *= x;
            let delta = power - mean[k];
            mean[k] += delta / count;
            m2[k] += delta * (power - mean[k]);
        }
    }
    let nf = n as f64;
    Ok((0..orders)
        .map(|k| {
            let variance = m2[k] / (nf - 1.0);
            McEstimate {
                order: k as u32 + 1,
                mean: mean[k],
                stderr: (variance / nf).sqrt(),
                n_samples: n,
                seed,
            }
        })
        .collect())
}

/// Sample estimate of `E X^k`.
pub fn mc_moment(spec: &DistributionSpec, k: u32, seed: u64, n: usize) -> Result<McEstimate> {
    Ok(mc_moments(spec, k, seed, n)?.pop().expect("k >= 1 checked above"))
}
