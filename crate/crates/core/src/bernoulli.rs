//! Exact Bernoulli numbers and Bernoulli polynomials.
//!
//! `B_n` is built from the binomial recurrence
//! `sum_{k=0}^{n} C(n+1, k) B_k = 0` with `B_0 = 1` (the convention
//! `B_1 = -1/2`), in exact rational arithmetic. Values are memoized in a
//! table that only ever grows; readers see a fully built prefix.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dd::DoubleDouble;
use crate::error::{Result, ZetaError};

/// Default largest index served by the shared table.
pub const DEFAULT_CAPACITY: usize = 256;

/// Memoized `B_0..=B_len-1`, bounded by a fixed capacity.
#[derive(Debug)]
pub struct BernoulliTable {
    capacity: usize,
    values: RwLock<Vec<BigRational>>,
}

impl BernoulliTable {
    pub fn with_capacity(capacity: usize) -> Self {
        BernoulliTable {
            capacity,
            values: RwLock::new(vec![BigRational::one()]),
        }
    }

    /// Process-wide table with [`DEFAULT_CAPACITY`].
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::with_capacity(DEFAULT_CAPACITY))
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn get(&self, n: usize) -> Result<BigRational> {
        if n > self.capacity {
            return Err(ZetaError::Capacity {
                requested: n,
                capacity: self.capacity,
            });
        }
        {
            let values = self.values.read().unwrap_or_else(|e| e.into_inner());
            if let Some(b) = values.get(n) {
                return Ok(b.clone());
            }
        }
        let mut values = self.values.write().unwrap_or_else(|e| e.into_inner());
        extend_to(&mut values, n);
        Ok(values[n].clone())
    }

    /// Snapshot of `B_0..=B_n`.
    pub fn prefix(&self, n: usize) -> Result<Vec<BigRational>> {
        self.get(n)?;
        let values = self.values.read().unwrap_or_else(|e| e.into_inner());
        Ok(values[..=n].to_vec())
    }
}

fn extend_to(values: &mut Vec<BigRational>, n: usize) {
    while values.len() <= n {
        let m = values.len();
        if m >= 3 && m % 2 == 1 {
            values.push(BigRational::zero());
            continue;
        }
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &binom;
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        values.push(-acc / BigInt::from(m + 1));
    }
}

/// Exact `B_n` from the shared table.
pub fn bernoulli_number(n: usize) -> Result<BigRational> {
    BernoulliTable::shared().get(n)
}

/// Binomial coefficient as a big integer.
pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `B_n(x)` with coefficients rounded once to double-double precision.
///
/// Evaluation is Horner's scheme in double-double, so the result is
/// accurate to a few ulps of `|B_n(x)|` even where the monomial terms
/// cancel heavily (e.g. `B_20` near its zeros, or at `x = 1`).
#[derive(Debug, Clone)]
pub struct BernoulliPolynomial {
    degree: usize,
    // highest power first
    coefficients: Vec<DoubleDouble>,
}

impl BernoulliPolynomial {
    pub fn new(n: usize) -> Result<Self> {
        let numbers = BernoulliTable::shared().prefix(n)?;
        let mut coefficients = Vec::with_capacity(n + 1);
        // coefficient of x^{n-k} is C(n, k) B_k
        for (k, b) in numbers.iter().enumerate() {
            let exact = b * binomial(n, k);
            let c = DoubleDouble::from_rational(&exact).ok_or_else(|| {
                ZetaError::Overflow(format!("coefficient of x^{} in B_{n}", n - k))
            })?;
            coefficients.push(c);
        }
        Ok(BernoulliPolynomial {
            degree: n,
            coefficients,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact coefficients, highest power first.
    pub fn exact_coefficients(&self) -> Result<Vec<BigRational>> {
        let n = self.degree;
        let numbers = BernoulliTable::shared().prefix(n)?;
        Ok(numbers
            .iter()
            .enumerate()
            .map(|(k, b)| b * binomial(n, k))
            .collect())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = DoubleDouble::default();
        for c in &self.coefficients {
            acc = acc.mul_f64(x).add(*c);
        }
        acc.to_f64()
    }
}

/// One-shot `B_n(x)`. Prefer [`BernoulliPolynomial`] in loops.
pub fn bernoulli_polynomial(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(ZetaError::domain("bernoulli_polynomial", x, "x finite"));
    }
    Ok(BernoulliPolynomial::new(n)?.eval(x))
}

/// Formats a rational as `num/den`, or just `num` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `true` if the stored form is canonical (lowest terms, positive denominator).
pub fn is_canonical(r: &BigRational) -> bool {
    r.denom() > &BigInt::zero() && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, ToPrimitive};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tabulated_values() {
        assert_eq!(bernoulli_number(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli_number(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli_number(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli_number(7).unwrap(), q(0, 1));
        assert_eq!(bernoulli_number(12).unwrap(), q(-691, 2730));
        assert_eq!(bernoulli_number(20).unwrap(), q(-174611, 330));
    }

    #[test]
    fn capacity_is_enforced() {
        let err = bernoulli_number(DEFAULT_CAPACITY + 1).unwrap_err();
        assert!(matches!(err, ZetaError::Capacity { requested: 257, capacity: 256 }));
        let small = BernoulliTable::with_capacity(10);
        assert!(small.get(10).is_ok());
        assert!(small.get(11).is_err());
    }

    #[test]
    fn odd_indices_vanish() {
        for n in 1..=64 {
            assert!(bernoulli_number(2 * n + 1).unwrap().is_zero(), "B_{}", 2 * n + 1);
        }
    }

    #[test]
    fn even_signs_alternate() {
        for n in 1..=32 {
            let b = bernoulli_number(2 * n).unwrap();
            let signed = if n % 2 == 1 { b } else { -b };
            assert!(signed.is_positive(), "B_{}", 2 * n);
        }
    }

    #[test]
    fn table_entries_are_canonical() {
        for b in BernoulliTable::shared().prefix(80).unwrap() {
            assert!(is_canonical(&b));
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let table = BernoulliTable::with_capacity(120);
        let results: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|i| {
                    let t = &table;
                    s.spawn(move || t.get(60 + 7 * i).unwrap())
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (i, b) in results.iter().enumerate() {
            assert_eq!(*b, bernoulli_number(60 + 7 * i).unwrap());
        }
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_polynomial(1, 0.0).unwrap(), -0.5);
        assert_eq!(bernoulli_polynomial(3, 0.5).unwrap(), 0.0);
        for n in 0..=20 {
            let at_zero = bernoulli_polynomial(n, 0.0).unwrap();
            let exact = bernoulli_number(n).unwrap().to_f64().unwrap();
            assert_eq!(at_zero, exact, "B_{n}(0)");
        }
        assert!(bernoulli_polynomial(2, f64::NAN).is_err());
    }

    #[test]
    fn endpoint_difference() {
        for n in 1..=20 {
            let p = BernoulliPolynomial::new(n).unwrap();
            let diff = p.eval(1.0) - p.eval(0.0);
            let expected = if n == 1 { 1.0 } else { 0.0 };
            assert!((diff - expected).abs() <= 1e-12, "n = {n}: {diff}");
        }
    }

    #[test]
    fn reflection_on_grid() {
        for n in 0..=20 {
            let p = BernoulliPolynomial::new(n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..=64 {
                let x = i as f64 / 64.0;
                let a = p.eval(1.0 - x);
                let b = sign * p.eval(x);
                let scale = a.abs().max(b.abs()).max(1.0);
                assert!((a - b).abs() <= 1e-12 * scale, "n = {n}, x = {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn generating_function_spot_check() {
        let (t, x) = (0.25_f64, 1.0 / 3.0);
        let mut sum = 0.0;
        let mut factorial = 1.0;
        for n in 0..=40 {
            if n > 0 {
                factorial *= n as f64;
            }
            sum += bernoulli_polynomial(n, x).unwrap() * t.powi(n as i32) / factorial;
        }
        let closed = t * (t * x).exp() / t.exp_m1();
        assert!((sum - closed).abs() < 1e-12, "{sum} vs {closed}");
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_rational(&q(-1, 2)), "-1/2");
        assert_eq!(format_rational(&q(0, 1)), "0");
        assert_eq!(format_rational(&q(1, 42)), "1/42");
    }

    proptest! {
        #[test]
        fn reflection_holds_off_grid(n in 0usize..=20, x in 0.0f64..=1.0) {
            let p = BernoulliPolynomial::new(n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let a = p.eval(1.0 - x);
            let b = sign * p.eval(x);
            // 1 - x is rounded, so allow for the derivative times half an ulp
            let slope = (n as f64) * BernoulliPolynomial::new(n.saturating_sub(1)).unwrap().eval(x).abs();
            let tol = 1e-12 * a.abs().max(b.abs()).max(1.0) + slope * f64::EPSILON;
            prop_assert!((a - b).abs() <= tol);
        }
    }
}
