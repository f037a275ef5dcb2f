//! Double-double floating point: an unevaluated sum of two `f64`s giving
//! roughly 106 mantissa bits.
//!
//! The epsilon series is summed in this type so that agreement checks against
//! exact closed forms are limited by the mathematics, not by accumulation
//! error.  Only the operations the series needs are provided: field
//! arithmetic, integer powers, integer roots and conversion from exact
//! rationals.  Products rely on `f64::mul_add` performing a fused multiply
//! add, which Rust guarantees.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::{to_f64, Rat};

/// `hi + lo` with `|lo|` at most half an ulp of `hi`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// Error-free sum: `a + b = s + e` exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free sum assuming `|a| >= |b|`.
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free product: `a * b = p + e` exactly.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Renormalizes an arbitrary pair into the canonical representation.
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Nearest double-double to an exact rational: the high word is the
    /// rounded value, the low word the rounded remainder.
    pub fn from_rat(x: &Rat) -> Dd {
        let hi = to_f64(x);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let back = Rat::from_float(hi).expect("finite float is rational");
        let lo = to_f64(&(x - back));
        Dd::new(hi, lo)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, k: i64) -> Dd {
        if k < 0 {
            return self.powi(-k).recip();
        }
        let mut acc = Dd::ONE;
        let mut base = self;
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Positive `q`-th root of a positive value by Newton iteration seeded
    /// from `f64`; two corrections reach full double-double accuracy.
    pub fn nth_root(self, q: u32) -> Dd {
        assert!(q > 0, "root order must be positive");
        assert!(self.hi > 0.0, "root of a non-positive value");
        if q == 1 {
            return self;
        }
        let mut x = Dd::from_f64(self.hi.powf(1.0 / q as f64));
        let qd = Dd::from_f64(q as f64);
        for _ in 0..3 {
            // x <- x - (x^q - self) / (q x^(q-1))
            let xq1 = x.powi(q as i64 - 1);
            let delta = (x * xq1 - self) / (qd * xq1);
            x = x - delta;
        }
        x
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + -rhs
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo + q3)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}
