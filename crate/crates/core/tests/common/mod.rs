//! Reference computations that share no code with the library.
#![allow(dead_code)]

/// `η(s)` from plain partial sums of the alternating series, accelerated
/// only by repeatedly averaging neighbouring partial sums.
pub fn eta_by_averaging(s: f64) -> f64 {
    const TERMS: usize = 96;
    let mut partial = Vec::with_capacity(TERMS);
    let mut acc = 0.0;
    for n in 1..=TERMS {
        let term = (n as f64).powf(-s);
        acc += if n % 2 == 1 { term } else { -term };
        partial.push(acc);
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    partial[0]
}

/// `ζ(s)` from [`eta_by_averaging`] with the factor `1 - 2^{1-s}` taken naively.
pub fn zeta_by_averaging(s: f64) -> f64 {
    eta_by_averaging(s) / (1.0 - 2f64.powf(1.0 - s))
}

/// `Σ_{k≥0} (2k+1)^{-s}` for `s > 1`: a direct sum with an Euler–Maclaurin
/// tail (step 2).
pub fn odd_denominator_sum(s: f64) -> f64 {
    const K: usize = 20_000;
    let mut acc = 0.0;
    for k in (0..K).rev() {
        acc += ((2 * k + 1) as f64).powf(-s);
    }
    let x = (2 * K + 1) as f64;
    let tail = 0.5 * x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s) + s / 6.0 * x.powf(-s - 1.0);
    acc + tail
}

/// Composite Simpson rule on `[a, b]` with `panels` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

pub fn logistic_kernel(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// `1/c` for the elliptic law by Simpson's rule in the smooth variable.
pub fn elliptic_inverse_constant() -> f64 {
    2.0 * simpson(|u| logistic_kernel(u * u), 0.0, 12.0, 120_000)
}

/// Taylor coefficients of `πt / sin(πt)` in powers of `t²`, by inverting
/// the series of `sin(πt)/(πt)`.
pub fn mgf_taylor_coefficients(count: usize) -> Vec<f64> {
    let pi2 = std::f64::consts::PI.powi(2);
    // sin(x)/x = Σ (-1)^k x^{2k} / (2k+1)!
    let mut sinc = Vec::with_capacity(count);
    let mut term = 1.0;
    for k in 0..count {
        if k > 0 {
            term *= -pi2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        }
        sinc.push(term);
    }
    let mut inv = vec![0.0; count];
    inv[0] = 1.0;
    for n in 1..count {
        let mut acc = 0.0;
        for k in 1..=n {
            acc += sinc[k] * inv[n - k];
        }
        inv[n] = -acc;
    }
    inv
}

/// `M''(0)` by a central difference of `πt/sin(πt)`.
pub fn logistic_second_moment_fd() -> f64 {
    let m = |t: f64| {
        if t == 0.0 {
            1.0
        } else {
            std::f64::consts::PI * t / (std::f64::consts::PI * t).sin()
        }
    };
    let h = 1e-3;
    (m(h) - 2.0 * m(0.0) + m(-h)) / (h * h)
}

pub const ZETA3: f64 = 1.202_056_903_159_594_2;
pub const ZETA5: f64 = 1.036_927_755_143_369_9;
