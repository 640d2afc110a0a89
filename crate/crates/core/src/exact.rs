//! Exact rational arithmetic for the witness checks.
//!
//! Every dyadic quantity (`2^-k`, `4^-k`, block weights `2^-k/|H_k|`) is a
//! [`BigRational`]; inequalities between square roots of such quantities are
//! decided by squaring, never by rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Exact = BigRational;

pub fn int(n: i64) -> Exact {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Exact {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Exact {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `4^e`.
pub fn pow4(e: i64) -> Exact {
    pow2(2 * e)
}

/// `8^e`.
pub fn pow8(e: i64) -> Exact {
    pow2(3 * e)
}

/// The exact value of a finite double.
pub fn from_f64(x: f64) -> Option<Exact> {
    BigRational::from_float(x)
}

pub fn to_f64(x: &Exact) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Decides `sqrt(a) - sqrt(b) >= c` exactly, for `a, b, c >= 0`.
pub fn sqrt_gap_at_least(a: &Exact, b: &Exact, c: &Exact) -> bool {
    debug_assert!(!a.is_negative() && !b.is_negative() && !c.is_negative());
    // sqrt(a) >= c + sqrt(b)  <=>  a - b - c^2 >= 2c sqrt(b)
    let lhs = a - b - c * c;
    if lhs.is_negative() {
        return false;
    }
    lhs.clone() * lhs >= int(4) * c * c * b
}

/// Whether `q = 1 / (m 2^k)` for some integers `m, k >= 1`.
pub fn in_dyadic_reciprocals(q: &Exact) -> bool {
    if !q.is_positive() || !q.numer().is_one() {
        return false;
    }
    let den = q.denom();
    !den.is_zero() && (den % BigInt::from(2)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(pow2(-3), ratio(1, 8));
        assert_eq!(pow4(2), int(16));
        assert_eq!(pow8(-1), ratio(1, 8));
    }

    #[test]
    fn sqrt_gap() {
        // sqrt(4) - sqrt(1) = 1
        assert!(sqrt_gap_at_least(&int(4), &int(1), &int(1)));
        assert!(!sqrt_gap_at_least(&int(4), &int(1), &ratio(1001, 1000)));
        // sqrt(2) - 1 ≈ 0.41421
        assert!(sqrt_gap_at_least(&int(2), &int(1), &ratio(41421, 100000)));
        assert!(!sqrt_gap_at_least(&int(2), &int(1), &ratio(41422, 100000)));
    }

    #[test]
    fn dyadic_reciprocals() {
        assert!(in_dyadic_reciprocals(&ratio(1, 2)));
        assert!(in_dyadic_reciprocals(&ratio(1, 6)));
        assert!(!in_dyadic_reciprocals(&ratio(1, 3)));
        assert!(!in_dyadic_reciprocals(&ratio(3, 8)));
        assert!(!in_dyadic_reciprocals(&int(1)));
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(from_f64(0.375).unwrap(), ratio(3, 8));
        assert!(from_f64(f64::NAN).is_none());
    }
}
