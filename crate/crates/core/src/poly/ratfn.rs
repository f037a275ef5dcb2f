//! Rational functions in one variable, the coefficient field for bivariate
//! exact division.
//!
//! Invariants: the denominator is monic and coprime to the numerator, and the
//! zero function is `0/1`, so structural equality is semantic equality.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::Rat;

use super::{PolyError, UniPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Builds `num / den` in reduced form.  Fails on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lc = den.leading().expect("nonzero denominator").clone();
        Ok(RationalFunction {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is the constant one.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Evaluates at `x`, failing on a pole of the reduced form.
    pub fn eval(&self, x: &Rat) -> Result<Rat, PolyError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(PolyError::Pole);
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators is nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators is nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (x^2 - 1) / (2x + 2) reduces to (x - 1)/2 with monic denominator 1.
        let f = RationalFunction::new(p(&[-1, 0, 1]), p(&[2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[-1, 1]).scale(&ratio(1, 2)));
        assert_eq!(f.den(), &p(&[1]));
        assert!(f.is_polynomial());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(p(&[1]), UniPoly::zero()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        // 1/(x-1) + 1/(x+1) = 2x/(x^2-1).
        let a = RationalFunction::new(p(&[1]), p(&[-1, 1])).unwrap();
        let b = RationalFunction::new(p(&[1]), p(&[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(s.num(), &p(&[0, 2]));
        assert_eq!(s.den(), &p(&[-1, 0, 1]));
        // (a + b) * (a + b)^(-1) = 1.
        assert_eq!(s.div(&s).unwrap(), RationalFunction::one());
        // a - a = 0 stays canonical.
        assert_eq!(&a - &a, RationalFunction::zero());
    }

    #[test]
    fn eval_and_poles() {
        let f = RationalFunction::new(p(&[-6, 0, 0, 1]), p(&[2, 1])).unwrap();
        assert_eq!(f.eval(&rat(1)).unwrap(), ratio(-5, 3));
        let g = RationalFunction::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert!(matches!(g.eval(&rat(1)), Err(PolyError::Pole)));
        // Removable singularities disappear under reduction.
        let h = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(h.eval(&rat(1)).unwrap(), rat(2));
    }
}
