//! Closed form coefficients and series evaluation of the epsilon function.
//!
//! When `phi` is a polynomial of degree `d` (see [`super::phi`]), the epsilon
//! function of the weight-`alpha` metric is the terminating expansion
//!
//! ```text
//! epsilon(s) = sum_{j=0}^{d} c_j (1 - s)^(d - j),
//! c_j = D^j phi(d) / j! * (alpha - n)_(d0 + j),
//! ```
//!
//! with `D^j` the backward difference at `d` and `s` the squared fiber
//! radius in normalized coordinates.  Independently of polynomiality,
//! epsilon is the series
//!
//! ```text
//! epsilon(s) = (alpha - n)_n (1 - s)^alpha
//!              * sum_{t>=0} psi(alpha, t) (alpha)_t / t! * s^t,
//! ```
//!
//! which this module sums in double-double precision with an explicit
//! truncation rule: stop once the term drops below the tolerance times the
//! partial sum *and* the term index has passed the peak `alpha s / (1 - s)`.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::Dd;
use crate::domains::{alpha_threshold, DomainSpec};
use crate::poly::finite_difference;
use crate::rational::{factorial, pow_i, rat, rising_factorial, to_f64, Rat};

use super::phi::phi_build;
use super::psi::psi_parts_at;
use super::EngineError;

/// Default cap on series terms.
pub const DEFAULT_MAX_TERMS: usize = 10_000;
/// Default relative truncation tolerance for the series.
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;

/// Terminating expansion of epsilon at a fixed `alpha`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsilonClosedForm {
    pub alpha: Rat,
    /// Backward differences `D^j phi(d)`, `j = 0..=d`.
    pub diffs: Vec<Rat>,
    /// Coefficients `c_j` of `(1 - s)^(d - j)`, `j = 0..=d`.
    pub coeffs: Vec<Rat>,
    base_dim: u32,
}

impl EpsilonClosedForm {
    /// Base dimension `d`; the expansion has `d + 1` coefficients.
    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    /// Exact value `sum_j c_j (1 - s)^(d - j)`.
    pub fn eval(&self, s: &Rat) -> Rat {
        let one_minus = Rat::one() - s;
        let mut acc = Rat::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            acc += c * pow_i(&one_minus, (self.base_dim as usize - j) as i64);
        }
        acc
    }
}

/// Closed form coefficients at `alpha`, failing when `phi` is not a
/// polynomial there.
pub fn epsilon_coeffs(spec: &DomainSpec, alpha: &Rat) -> Result<EpsilonClosedForm, EngineError> {
    let f = phi_build(spec, alpha)?;
    let phi = f.as_polynomial().ok_or(EngineError::NotPolynomial)?;
    let d = spec.base_dim();
    debug_assert_eq!(phi.degree(), Some(d as usize));
    let n = rat(spec.total_dim() as i64);
    let d0 = spec.fiber_dim();
    let at = rat(d as i64);
    let mut diffs = Vec::with_capacity(d as usize + 1);
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let dj = finite_difference(phi, j, &at);
        let cj = &dj / factorial(j) * rising_factorial(&(alpha - &n), d0 + j);
        diffs.push(dj);
        coeffs.push(cj);
    }
    Ok(EpsilonClosedForm {
        alpha: alpha.clone(),
        diffs,
        coeffs,
        base_dim: d,
    })
}

/// Result of summing the defining series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesEval {
    /// Double-double value of epsilon.
    pub value: Dd,
    /// Number of terms actually summed.
    pub terms_used: usize,
    /// Magnitude of the final term, as a truncation proxy.
    pub last_term: f64,
    /// Whether the truncation rule was met within the term cap.
    pub converged: bool,
}

/// Sums the defining series at `s` in `[0, 1)` for `alpha` above the
/// admissibility threshold.
pub fn epsilon_series(
    spec: &DomainSpec,
    alpha: &Rat,
    s: &Rat,
    max_terms: usize,
    tol: f64,
) -> Result<SeriesEval, EngineError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidSpec(violations));
    }
    let threshold = alpha_threshold(spec);
    if alpha <= &threshold {
        return Err(EngineError::AlphaBelowThreshold {
            alpha: Box::new(alpha.clone()),
            threshold: Box::new(threshold),
        });
    }
    if s.is_negative() || s >= &Rat::one() {
        return Err(EngineError::SOutOfRange { s: s.clone() });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(EngineError::InvalidTolerance { tol });
    }
    let max_terms = max_terms.max(1);

    let (num_y, den_y) = psi_parts_at(spec, alpha);
    let one_minus = Rat::one() - s;
    let peak = alpha * s / &one_minus;
    let tol_dd = Dd::from_f64(tol);

    let mut sum = Dd::ZERO;
    // b = (alpha)_t / t! * s^t, maintained multiplicatively.
    let mut b = Dd::ONE;
    let mut terms_used = 0;
    let mut last_term = Dd::ZERO;
    let mut converged = false;
    for t in 0..max_terms {
        let y = rat(t as i64);
        let den = den_y.eval(&y);
        if den.is_zero() {
            return Err(EngineError::PsiPole { t: t as u32 });
        }
        let psi = num_y.eval(&y) / den;
        let term = Dd::from_rat(&psi) * b;
        sum = sum + term;
        terms_used = t + 1;
        last_term = term.abs();
        if t >= 1 && last_term <= tol_dd * sum.abs() && rat(t as i64) >= peak {
            converged = true;
            break;
        }
        let step = (alpha + rat(t as i64)) * s / rat(t as i64 + 1);
        b = b * Dd::from_rat(&step);
    }

    let prefactor = Dd::from_rat(&rising_factorial(&(alpha - rat(spec.total_dim() as i64)), spec.total_dim()));
    let value = prefactor * pow_rat_dd(&one_minus, alpha)? * sum;
    Ok(SeriesEval {
        value,
        terms_used,
        last_term: last_term.to_f64(),
        converged,
    })
}

/// `base^(p/q)` in double-double for positive rational base: the integer
/// power is exact rational arithmetic, the root a Newton iteration.
fn pow_rat_dd(base: &Rat, exponent: &Rat) -> Result<Dd, EngineError> {
    let p = exponent
        .numer()
        .to_i64()
        .ok_or(EngineError::UnsupportedAlpha)?;
    let q = exponent
        .denom()
        .to_u32()
        .ok_or(EngineError::UnsupportedAlpha)?;
    if p.unsigned_abs() > 1_000_000 {
        return Err(EngineError::UnsupportedAlpha);
    }
    let powered = Dd::from_rat(&pow_i(base, p));
    Ok(if q == 1 {
        powered
    } else {
        powered.nth_root(q)
    })
}

/// Weighted Bergman kernel value on the diagonal through the epsilon
/// function: `K = exp(alpha * potential) * epsilon(s)`.
///
/// Uses the exact closed form when `phi` is a polynomial at this `alpha` and
/// falls back to the series otherwise.
pub fn kernel_eval(
    spec: &DomainSpec,
    alpha: &Rat,
    s: &Rat,
    potential: f64,
) -> Result<f64, EngineError> {
    let threshold = alpha_threshold(spec);
    if alpha <= &threshold {
        return Err(EngineError::AlphaBelowThreshold {
            alpha: Box::new(alpha.clone()),
            threshold: Box::new(threshold),
        });
    }
    if s.is_negative() || s >= &Rat::one() {
        return Err(EngineError::SOutOfRange { s: s.clone() });
    }
    let eps = match epsilon_coeffs(spec, alpha) {
        Ok(cf) => to_f64(&cf.eval(s)),
        Err(EngineError::NotPolynomial) => {
            epsilon_series(spec, alpha, s, DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL)?
                .value
                .to_f64()
        }
        Err(e) => return Err(e),
    };
    Ok((to_f64(alpha) * potential).exp() * eps)
}
