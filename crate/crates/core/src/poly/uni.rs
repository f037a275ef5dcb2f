//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so
//! structural equality is semantic equality.  Provides exact long division,
//! monic gcd, affine composition, raising factorial polynomials, forward
//! finite differences and Newton reconstruction from differences at a point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, factorial, Rat};

use super::PolyError;

/// Polynomial in one variable over `Rat`.
///
/// Invariant: `coeffs` has no trailing zero, and the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `c * x^deg`.
    pub fn monomial(deg: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients without trailing zeros.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(c x + e)` by Horner over polynomial arithmetic.
    pub fn compose_affine(&self, c: &Rat, e: &Rat) -> Self {
        let inner = Self::from_coeffs(vec![e.clone(), c.clone()]);
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(coeff.clone());
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so the leading coefficient is one.  Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact long division: `self = q * den + r` with `deg r < deg den`.
    pub fn div_rem(&self, den: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = den.leading().expect("nonzero divisor").clone();
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().expect("nonzero remainder") / &lc;
            let shift = rd - dd;
            q[shift] = factor.clone();
            rem = &rem - &den.scale(&factor).mul_xpow(shift);
        }
        Ok((UniPoly::from_coeffs(q), rem))
    }

    /// Quotient when the division leaves no remainder, `None` otherwise.
    pub fn exact_div(&self, den: &UniPoly) -> Option<UniPoly> {
        match self.div_rem(den) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplies by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl fmt::Display for UniPoly {
    /// Renders in descending degree, e.g. `x^2 - 3/2*x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// The raising factorial `(x + shift)_m` as a polynomial in `x`.
pub fn rising_factorial_poly(shift: &Rat, m: u32) -> UniPoly {
    let mut acc = UniPoly::one();
    for i in 0..m {
        let lin = UniPoly::from_coeffs(vec![shift + Rat::from_integer(i.into()), Rat::one()]);
        acc = &acc * &lin;
    }
    acc
}

/// Backward difference `D^j f(x0) = sum_l C(j,l) (-1)^l f(x0 - l)`.
pub fn finite_difference(f: &UniPoly, j: u32, x0: &Rat) -> Rat {
    finite_difference_fn::<std::convert::Infallible>(|x| Ok(f.eval(x)), j, x0)
        .expect("polynomial evaluation cannot fail")
}

/// Backward difference of an arbitrary evaluator (e.g. a rational function
/// that may hit a pole).
pub fn finite_difference_fn<E>(
    f: impl Fn(&Rat) -> Result<Rat, E>,
    j: u32,
    x0: &Rat,
) -> Result<Rat, E> {
    let mut acc = Rat::zero();
    let mut sign = Rat::one();
    for l in 0..=j {
        let x = x0 - Rat::from_integer(l.into());
        acc += &sign * binomial(j, l) * f(&x)?;
        sign = -sign;
    }
    Ok(acc)
}

/// Rebuilds the unique polynomial of degree `<= d` from its backward
/// differences at `d`: given `diffs[j] = D^j f(d)` for `j = 0..=d`, returns
/// `f(x) = sum_j diffs[j] / j! * (x - d)_j`.
pub fn newton_reconstruct(diffs: &[Rat]) -> UniPoly {
    let d = diffs.len().saturating_sub(1) as i64;
    let mut acc = UniPoly::zero();
    for (j, dj) in diffs.iter().enumerate() {
        if dj.is_zero() {
            continue;
        }
        let basis = rising_factorial_poly(&crate::rational::rat(-d), j as u32);
        acc = &acc + &basis.scale(&(dj / factorial(j as u32)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn canonical_form_trims_zeros() {
        let q = UniPoly::from_coeffs(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(q.degree(), Some(0));
        assert!(UniPoly::from_coeffs(vec![rat(0)]).is_zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[-4, 3, 1]); // x^2 + 3x - 4
        let b = p(&[2, 1]); // x + 2
        assert_eq!(&a + &b, p(&[-2, 4, 1]));
        assert_eq!(&a - &b, p(&[-6, 2, 1]));
        assert_eq!(&b * &b, p(&[4, 4, 1]));
        assert_eq!(a.eval(&rat(2)), rat(6));
        assert_eq!(a.eval(&ratio(1, 2)), ratio(-9, 4));
    }

    #[test]
    fn long_division_by_hand() {
        // (x - 1)(x + 4) = x^2 + 3x - 4 divided by x + 2:
        // quotient x + 1, remainder -6.
        let num = &p(&[-1, 1]) * &p(&[4, 1]);
        let den = p(&[2, 1]);
        let (q, r) = num.div_rem(&den).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[-6]));
        assert!(num.exact_div(&den).is_none());
        assert_eq!(&(&q * &den) + &r, num);
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(matches!(
            p(&[1, 1]).div_rem(&UniPoly::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let g = p(&[-1, 1]); // x - 1
        let a = &g * &p(&[3, 2]); // (x-1)(2x+3)
        let b = &g * &p(&[5, 0, 1]); // (x-1)(x^2+5)
        assert_eq!(a.gcd(&b), g);
        assert_eq!(p(&[2]).gcd(&p(&[0])), p(&[1]));
    }

    #[test]
    fn compose_affine_matches_pointwise() {
        let a = p(&[1, -2, 0, 3]);
        let (c, e) = (ratio(2, 3), rat(-1));
        let composed = a.compose_affine(&c, &e);
        for x in [-2i64, 0, 1, 5] {
            let x = rat(x);
            assert_eq!(composed.eval(&x), a.eval(&(&c * &x + &e)));
        }
    }

    #[test]
    fn rising_factorial_poly_by_hand() {
        // (x - 2)_2 = (x - 2)(x - 1); value 12 at x = 5.
        let rf = rising_factorial_poly(&rat(-2), 2);
        assert_eq!(rf, p(&[2, -3, 1]));
        assert_eq!(rf.eval(&rat(5)), rat(12));
        assert_eq!(rising_factorial_poly(&rat(3), 0), p(&[1]));
    }

    #[test]
    fn finite_differences_by_hand() {
        // f = x - 1: D^1 f(1) = f(1) - f(0) = 1.
        assert_eq!(finite_difference(&p(&[-1, 1]), 1, &rat(1)), rat(1));
        // f = x^2: D^2 f(2) = f(2) - 2 f(1) + f(0) = 2.
        assert_eq!(finite_difference(&p(&[0, 0, 1]), 2, &rat(2)), rat(2));
        // Degree-j difference of a degree-j monic polynomial is j!.
        assert_eq!(finite_difference(&p(&[0, 0, 0, 1]), 3, &rat(7)), rat(6));
        // One order beyond the degree it annihilates.
        assert_eq!(finite_difference(&p(&[4, 2, 5]), 3, &rat(0)), rat(0));
    }

    #[test]
    fn newton_reconstruct_by_hand() {
        // diffs [0, 1] at d = 1 encode f(1) = 0, f(1) - f(0) = 1, i.e. x - 1.
        assert_eq!(newton_reconstruct(&[rat(0), rat(1)]), p(&[-1, 1]));
    }

    #[test]
    fn newton_round_trip_cubic() {
        let f = p(&[7, -3, 0, 2]);
        let d = 3u32;
        let diffs: Vec<Rat> = (0..=d).map(|j| finite_difference(&f, j, &rat(3))).collect();
        assert_eq!(newton_reconstruct(&diffs), f);
    }
}
