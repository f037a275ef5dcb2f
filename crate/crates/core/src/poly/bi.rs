//! Sparse bivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by `(i, j)` exponents of `(x, y)` with no
//! stored zeros, so structural equality is semantic equality and iteration
//! order is deterministic.  Division is exact division in `F[v]` where `F` is
//! the rational function field in the other variable; it succeeds only when
//! the quotient is again a polynomial in both variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

use super::{RationalFunction, UniPoly};

/// Which variable of a [`BiPoly`] an operation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
}

/// Polynomial in two variables over `Rat`.
///
/// Invariant: no zero coefficient is stored; the zero polynomial is the empty
/// map.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.insert_add((0, 0), c);
        p
    }

    /// The linear polynomial `a x + b y + c`.
    pub fn linear(a: Rat, b: Rat, c: Rat) -> Self {
        let mut p = Self::zero();
        p.insert_add((1, 0), a);
        p.insert_add((0, 1), b);
        p.insert_add((0, 0), c);
        p
    }

    /// Embeds a univariate polynomial as a polynomial in the chosen variable.
    pub fn from_uni(var: Var, p: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let key = match var {
                Var::X => (k as u32, 0),
                Var::Y => (0, k as u32),
            };
            out.insert_add(key, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `x`, or `None` for zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Degree in `y`, or `None` for zero.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Coefficient of `x^i y^j` (zero if absent).
    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        // Term count stays small here; direct powering is fine.
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * crate::rational::pow_i(x, i as i64) * crate::rational::pow_i(y, j as i64);
        }
        acc
    }

    /// Substitutes a value for `x`, leaving a univariate polynomial in `y`.
    pub fn eval_x(&self, x: &Rat) -> UniPoly {
        let deg = self.deg_y().map_or(0, |d| d as usize);
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[j as usize] += c * crate::rational::pow_i(x, i as i64);
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitutes a value for `y`, leaving a univariate polynomial in `x`.
    pub fn eval_y(&self, y: &Rat) -> UniPoly {
        let deg = self.deg_x().map_or(0, |d| d as usize);
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += c * crate::rational::pow_i(y, j as i64);
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Replaces `y` by the affine form `a x + b y + c`.
    pub fn substitute_y(&self, a: &Rat, b: &Rat, c: &Rat) -> Self {
        let inner = Self::linear(a.clone(), b.clone(), c.clone());
        // Horner in descending powers of y over the x-coefficient rows.
        let rows = self.rows(Var::Y);
        let mut acc = Self::zero();
        for row in rows.into_iter().rev() {
            acc = &(&acc * &inner) + &Self::from_uni(Var::X, &row);
        }
        acc
    }

    /// Coefficient rows along `var`: entry `k` is the coefficient of `var^k`
    /// as a univariate polynomial in the other variable.
    pub fn rows(&self, var: Var) -> Vec<UniPoly> {
        let deg = match var {
            Var::X => self.deg_x(),
            Var::Y => self.deg_y(),
        };
        let Some(deg) = deg else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<Rat>> = vec![Vec::new(); deg as usize + 1];
        for (&(i, j), c) in &self.terms {
            let (k, other) = match var {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            if rows[k].len() <= other {
                rows[k].resize(other + 1, Rat::zero());
            }
            rows[k][other] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    /// Rebuilds from coefficient rows along `var` (inverse of [`Self::rows`]).
    pub fn from_rows(var: Var, rows: &[UniPoly]) -> Self {
        let other = match var {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        let mut acc = Self::zero();
        for (k, row) in rows.iter().enumerate() {
            let mut term = Self::from_uni(other, row);
            let k = k as u32;
            term = BiPoly {
                terms: term
                    .terms
                    .into_iter()
                    .map(|((i, j), c)| {
                        let key = match var {
                            Var::X => (i + k, j),
                            Var::Y => (i, j + k),
                        };
                        (key, c)
                    })
                    .collect(),
            };
            acc = &acc + &term;
        }
        acc
    }

    /// Long division along `var` over the rational function field in the
    /// other variable: quotient and remainder coefficient rows, lowest power
    /// first.  `None` only for a zero divisor.
    pub fn div_rem_fraction_field(
        &self,
        den: &BiPoly,
        var: Var,
    ) -> Option<(Vec<RationalFunction>, Vec<RationalFunction>)> {
        if den.is_zero() {
            return None;
        }
        let den_rows: Vec<RationalFunction> = den
            .rows(var)
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect();
        let dd = den_rows.len() - 1;
        let lead = den_rows.last().expect("nonzero divisor");
        debug_assert!(!lead.is_zero());

        let mut rem: Vec<RationalFunction> = self
            .rows(var)
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect();
        let mut q = vec![RationalFunction::zero(); rem.len().saturating_sub(dd)];
        loop {
            while rem.last().is_some_and(RationalFunction::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let factor = rem
                .last()
                .expect("nonzero remainder")
                .div(lead)
                .expect("nonzero leading coefficient");
            for (k, dk) in den_rows.iter().enumerate() {
                let delta = &factor * dk;
                rem[shift + k] = &rem[shift + k] - &delta;
            }
            rem.pop();
            q[shift] = factor;
        }
        Some((q, rem))
    }

    /// Exact division along `var` over the rational function field in the
    /// other variable.  Returns the quotient only when the remainder vanishes
    /// identically and every quotient coefficient is itself a polynomial.
    pub fn exact_div(&self, den: &BiPoly, var: Var) -> Option<BiPoly> {
        let (q, rem) = self.div_rem_fraction_field(den, var)?;
        if !rem.iter().all(RationalFunction::is_zero) {
            return None;
        }
        let mut q_rows = Vec::with_capacity(q.len());
        for f in &q {
            q_rows.push(f.as_polynomial()?.clone());
        }
        Some(Self::from_rows(var, &q_rows))
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl fmt::Display for BiPoly {
    /// Renders in descending lexicographic `(i, j)` order, e.g.
    /// `2*x^2*y - 1/2*y + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
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
            if (i, j) == (0, 0) {
                write!(f, "{mag}")?;
                continue;
            }
            let mut lead = true;
            if !mag.is_one() {
                write!(f, "{mag}")?;
                lead = false;
            }
            for (var, e) in [("x", i), ("y", j)] {
                if e == 0 {
                    continue;
                }
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_add(k, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.insert_add((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

/// `p(a x + b y + c)` for univariate `p`, by Horner over bivariate arithmetic.
pub fn compose_uni_linear(p: &UniPoly, a: &Rat, b: &Rat, c: &Rat) -> BiPoly {
    let inner = BiPoly::linear(a.clone(), b.clone(), c.clone());
    let mut acc = BiPoly::zero();
    for coeff in p.coeffs().iter().rev() {
        acc = &(&acc * &inner) + &BiPoly::constant(coeff.clone());
    }
    acc
}
