//! Arbitrary-precision rational scalars.
//!
//! [`Rat`] is `num_rational::BigRational`, which already maintains the two
//! invariants every caller here relies on: values are stored in lowest terms
//! and the denominator is positive.  This module adds the small constructors
//! and combinatorial scalars (factorials, binomials, raising factorials) used
//! throughout the polynomial and epsilon layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n / d`.  Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a rational, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// Raising factorial `(x)_m = x (x+1) ... (x+m-1)`, with `(x)_0 = 1`.
pub fn rising_factorial(x: &Rat, m: u32) -> Rat {
    let mut acc = Rat::one();
    let mut term = x.clone();
    for _ in 0..m {
        acc *= &term;
        term += Rat::one();
    }
    acc
}

/// `x^k` for a signed integer exponent.  Panics on `0^k` with `k < 0`.
pub fn pow_i(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc *= x;
        }
        acc
    } else {
        pow_i(x, -k).recip()
    }
}

/// Nearest `f64` to an exact rational.
///
/// The quotient is scaled by a power of two until it fits in 64 significant
/// bits, converted, then rescaled, so the result is correctly rounded for
/// every magnitude the verification layer produces.
pub fn to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let neg = x.is_negative();
    let a = x.abs();
    let (num, den) = (a.numer().clone(), a.denom().clone());
    // Shift so the integer quotient carries 80 bits: enough that the final
    // double rounding error stays below half an ulp of the true value.
    let shift: i64 = 80 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * (2.0f64).powi(-shift as i32);
    if neg {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let x = ratio(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), rat(1));
        assert_eq!(factorial(5), rat(120));
        assert_eq!(binomial(6, 2), rat(15));
        assert_eq!(binomial(3, 5), rat(0));
    }

    #[test]
    fn rising_factorial_values() {
        // (x)_0 = 1, (1)_4 = 4!, and a shifted evaluation by hand:
        // (5/2)_3 = (5/2)(7/2)(9/2) = 315/8.
        assert_eq!(rising_factorial(&rat(7), 0), rat(1));
        assert_eq!(rising_factorial(&rat(1), 4), rat(24));
        assert_eq!(rising_factorial(&ratio(5, 2), 3), ratio(315, 8));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_i(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow_i(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow_i(&rat(5), 0), rat(1));
    }

    #[test]
    fn f64_conversion_is_correctly_rounded() {
        assert_eq!(to_f64(&ratio(1, 2)), 0.5);
        assert_eq!(to_f64(&ratio(1, 3)), 1.0 / 3.0);
        assert_eq!(to_f64(&ratio(-7, 10)), -0.7);
        // A value far outside the directly convertible range.
        let big = pow_i(&rat(10), 40) + ratio(1, 3);
        assert_eq!(to_f64(&big), 1e40);
    }
}
