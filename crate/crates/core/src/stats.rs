//! Goodness-of-fit helpers for the samplers.

use crate::error::{Result, ZetaError};
use crate::quadrature::{integrate_finite, QuadratureConfig};

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n(x) - F(x)|`.
///
/// `samples` is sorted in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    d
}

/// Asymptotic critical value of the KS statistic at level `alpha`, with
/// Stephens' finite-sample correction.
pub fn ks_critical_value(n: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ZetaError::domain("ks_critical_value", alpha, "0 < alpha < 1"));
    }
    if n == 0 {
        return Err(ZetaError::domain("ks_critical_value", 0.0, "n >= 1"));
    }
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let rn = (n as f64).sqrt();
    Ok(c / (rn + 0.12 + 0.11 / rn))
}

/// CDF tabulated from a density by piecewise quadrature and interpolated
/// with cubic Hermite segments that use the density as the slope.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedCdf {
    /// Tabulates `F(x) = base + ∫_lower^x pdf` on `steps` equal panels of
    /// `[lower, upper]`.
    pub fn from_density<P: Fn(f64) -> f64>(
        pdf: P,
        lower: f64,
        upper: f64,
        steps: usize,
        base: f64,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        if !(lower < upper) || steps == 0 {
            return Err(ZetaError::Config(format!(
                "bad tabulation grid [{lower}, {upper}] with {steps} steps"
            )));
        }
        let h = (upper - lower) / steps as f64;
        let nodes: Vec<f64> = (0..=steps).map(|i| lower + h * i as f64).collect();
        let mut values = Vec::with_capacity(nodes.len());
        let mut acc = base;
        values.push(acc);
        for w in nodes.windows(2) {
            acc += integrate_finite(&pdf, w[0], w[1], cfg)?.value;
            values.push(acc);
        }
        let slopes = nodes.iter().map(|&x| pdf(x)).collect();
        Ok(TabulatedCdf { nodes, values, slopes })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let last = self.nodes.len() - 1;
        if x <= self.nodes[0] {
            return self.values[0];
        }
        if x >= self.nodes[last] {
            return self.values[last];
        }
        let h = self.nodes[1] - self.nodes[0];
        let i = (((x - self.nodes[0]) / h) as usize).min(last - 1);
        let t = (x - self.nodes[i]) / h;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1
    }
}
