//! Minimal double-double arithmetic.
//!
//! Only the handful of operations needed to evaluate exact rational
//! coefficients (Bernoulli polynomials, Euler's closed form) without
//! losing them to cancellation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// High/low split of pi.
pub const PI: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

impl DoubleDouble {
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Rounds an exact rational to the nearest double-double.
    ///
    /// Returns `None` when the leading part is not finite.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        if r.is_zero() {
            return Some(Self::default());
        }
        let hi = r.to_f64()?;
        if !hi.is_finite() {
            return None;
        }
        let rest = r - BigRational::from_float(hi)?;
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Some(DoubleDouble { hi, lo })
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    pub fn mul(self, other: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p, e + self.lo * x);
        DoubleDouble { hi, lo }
    }

    pub fn powi(self, mut n: u32) -> DoubleDouble {
        let mut base = self;
        let mut acc = DoubleDouble::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

/// Converts an exact integer to the nearest double-double.
pub fn from_bigint(n: &BigInt) -> Option<DoubleDouble> {
    DoubleDouble::from_rational(&BigRational::from_integer(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_split_recovers_extra_digits() {
        let sq = PI.mul(PI);
        // pi^2 to 32 digits
        let exact = BigRational::new(
            "98696044010893586188344909998762".parse().unwrap(),
            BigInt::from(10u8).pow(31),
        );
        let got = BigRational::from_float(sq.hi).unwrap() + BigRational::from_float(sq.lo).unwrap();
        let err = (got - exact).to_f64().unwrap().abs();
        assert!(err < 1e-29, "err = {err:e}");
    }

    #[test]
    fn rational_roundtrip_keeps_low_part() {
        let third = BigRational::new(1.into(), 3.into());
        let dd = DoubleDouble::from_rational(&third).unwrap();
        let back = BigRational::from_float(dd.hi).unwrap() + BigRational::from_float(dd.lo).unwrap();
        let err = (back - &third).to_f64().unwrap().abs();
        assert!(err < 1e-32);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = DoubleDouble::from_f64(1.1);
        let mut y = DoubleDouble::ONE;
        for _ in 0..7 {
            y = y.mul(x);
        }
        let z = x.powi(7);
        assert!((y.to_f64() - z.to_f64()).abs() < 1e-15);
    }
}
