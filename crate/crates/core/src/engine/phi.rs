//! The auxiliary function `phi` and the polynomiality decision.
//!
//! With `d` the base dimension and `n` the total dimension, define
//!
//! ```text
//! phi(x) = (x - d)_d * prod_i chi_i(mu_i nu_i alpha + mu_i x - p_i)
//!          / [ prod_i mu_i^(d_i) * sum_t sigma(t) (alpha - n)_(d-t) (x - t)_t ]
//! ```
//!
//! The epsilon function is a polynomial in the fiber variable exactly when
//! this quotient is a polynomial in `x`.  With `alpha` left symbolic the
//! quotient lives in `Q(alpha)[x]`; divisibility there with a quotient that
//! is polynomial in `alpha` as well decides polynomiality for every
//! admissible `alpha` at once.  With `alpha` fixed the decision is plain
//! univariate division after cancellation.

use num_traits::Zero;

use crate::domains::{hua_polynomial, DomainSpec};
use crate::poly::{
    compose_uni_linear, rising_factorial_poly, BiPoly, RationalFunction, UniPoly, Var,
};
use crate::rational::{rat, rising_factorial, Rat};

use super::psi::{mu_power, sigma_all};
use super::EngineError;

/// How `alpha` is treated by [`polynomiality_check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlphaMode {
    /// Decide for all `alpha` at once over `Q(alpha)`.
    Symbolic,
    /// Decide separately at each given value.
    Fixed(Vec<Rat>),
}

/// Outcome of the polynomiality decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolynomialityStatus {
    /// `phi` is a polynomial for every `alpha`.
    PolynomialAllAlpha,
    /// Polynomial at exactly the listed `alpha` values among those checked.
    PolynomialAtAlpha(Vec<Rat>),
    /// Not a polynomial (symbolically, or at every checked `alpha`).
    NotPolynomial,
}

/// A polynomial in `x`, either with exact rational coefficients at a fixed
/// `alpha`, or with coefficients polynomial in `alpha` (bivariate in
/// `(alpha, x)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PhiForm {
    Fixed(UniPoly),
    Symbolic(BiPoly),
}

/// Decision for one fixed `alpha`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaCase {
    pub alpha: Rat,
    /// The polynomial `phi` when division is exact.
    pub phi: Option<UniPoly>,
    /// Nonzero remainder after full cancellation otherwise.
    pub witness: Option<UniPoly>,
}

/// Verdict of [`polynomiality_check`].
///
/// `phi` is present exactly when the status is not `NotPolynomial`;
/// `witness` is present exactly when it is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialityVerdict {
    pub status: PolynomialityStatus,
    pub phi: Option<PhiForm>,
    pub witness: Option<PhiForm>,
    /// Per-alpha detail in fixed mode, empty in symbolic mode.
    pub details: Vec<AlphaCase>,
}

/// `phi` at a fixed `alpha`, as a reduced rational function in `x`.
pub fn phi_build(spec: &DomainSpec, alpha: &Rat) -> Result<RationalFunction, EngineError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidSpec(violations));
    }
    let d = spec.base_dim();
    let n = spec.total_dim() as i64;

    let mut num = rising_factorial_poly(&rat(-(d as i64)), d);
    for f in spec.factors() {
        let chi = hua_polynomial(f.params());
        let shift = f.mu() * f.nu() * alpha - rat(f.params().genus() as i64);
        num = &num * &chi.compose_affine(f.mu(), &shift);
    }

    let mut den = UniPoly::zero();
    for (t, st) in sigma_all(spec).iter().enumerate() {
        if st.is_zero() {
            continue;
        }
        let scalar = st * rising_factorial(&(alpha - rat(n)), d - t as u32);
        den = &den + &rising_factorial_poly(&rat(-(t as i64)), t as u32).scale(&scalar);
    }
    den = den.scale(&mu_power(spec));

    RationalFunction::new(num, den).map_err(|_| EngineError::DegenerateDenominator)
}

/// Numerator and denominator of `phi` with `alpha` symbolic, as bivariate
/// polynomials in `(alpha, x)`.
pub fn phi_build_symbolic(spec: &DomainSpec) -> Result<(BiPoly, BiPoly), EngineError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidSpec(violations));
    }
    let d = spec.base_dim();
    let n = spec.total_dim() as i64;

    let mut num = BiPoly::from_uni(Var::Y, &rising_factorial_poly(&rat(-(d as i64)), d));
    for f in spec.factors() {
        let chi = hua_polynomial(f.params());
        let a = f.mu() * f.nu();
        num = &num
            * &compose_uni_linear(&chi, &a, f.mu(), &-rat(f.params().genus() as i64));
    }

    let mut den = BiPoly::zero();
    for (t, st) in sigma_all(spec).iter().enumerate() {
        if st.is_zero() {
            continue;
        }
        let left = BiPoly::from_uni(Var::X, &rising_factorial_poly(&rat(-n), d - t as u32));
        let right = BiPoly::from_uni(Var::Y, &rising_factorial_poly(&rat(-(t as i64)), t as u32));
        den = &den + &(&left * &right).scale(st);
    }
    den = den.scale(&mu_power(spec));
    Ok((num, den))
}

/// Decides whether `phi` is a polynomial, symbolically in `alpha` or at
/// fixed values.
pub fn polynomiality_check(
    spec: &DomainSpec,
    mode: AlphaMode,
) -> Result<PolynomialityVerdict, EngineError> {
    match mode {
        AlphaMode::Symbolic => {
            let (num, den) = phi_build_symbolic(spec)?;
            let (q, rem) = num
                .div_rem_fraction_field(&den, Var::Y)
                .expect("denominator has constant leading coefficient");
            if rem.iter().all(RationalFunction::is_zero) {
                if let Some(phi) = assemble_polynomial_rows(&q) {
                    return Ok(PolynomialityVerdict {
                        status: PolynomialityStatus::PolynomialAllAlpha,
                        phi: Some(PhiForm::Symbolic(phi)),
                        witness: None,
                        details: Vec::new(),
                    });
                }
                // Quotient exists over Q(alpha) but is not polynomial in
                // alpha; the cleared remainder of the failing row serves as
                // the witness.
            }
            Ok(PolynomialityVerdict {
                status: PolynomialityStatus::NotPolynomial,
                phi: None,
                witness: Some(PhiForm::Symbolic(clear_denominators(&rem, &q))),
                details: Vec::new(),
            })
        }
        AlphaMode::Fixed(alphas) => {
            let mut details = Vec::with_capacity(alphas.len());
            for alpha in &alphas {
                let f = phi_build(spec, alpha)?;
                if let Some(phi) = f.as_polynomial() {
                    details.push(AlphaCase {
                        alpha: alpha.clone(),
                        phi: Some(phi.clone()),
                        witness: None,
                    });
                } else {
                    let (_, witness) = f.num().div_rem(f.den()).expect("nonzero denominator");
                    debug_assert!(!witness.is_zero());
                    details.push(AlphaCase {
                        alpha: alpha.clone(),
                        phi: None,
                        witness: Some(witness),
                    });
                }
            }
            let passing: Vec<Rat> = details
                .iter()
                .filter(|c| c.phi.is_some())
                .map(|c| c.alpha.clone())
                .collect();
            let first_phi = details.iter().find_map(|c| c.phi.clone());
            let first_witness = details.iter().find_map(|c| c.witness.clone());
            let verdict = if passing.is_empty() {
                PolynomialityVerdict {
                    status: PolynomialityStatus::NotPolynomial,
                    phi: None,
                    witness: first_witness.map(PhiForm::Fixed),
                    details,
                }
            } else {
                PolynomialityVerdict {
                    status: PolynomialityStatus::PolynomialAtAlpha(passing),
                    phi: first_phi.map(PhiForm::Fixed),
                    witness: None,
                    details,
                }
            };
            Ok(verdict)
        }
    }
}

/// Rebuilds a bivariate polynomial from quotient rows when every row is
/// polynomial in `alpha`.
fn assemble_polynomial_rows(rows: &[RationalFunction]) -> Option<BiPoly> {
    let mut polys = Vec::with_capacity(rows.len());
    for r in rows {
        polys.push(r.as_polynomial()?.clone());
    }
    Some(BiPoly::from_rows(Var::Y, &polys))
}

/// Scales rational function rows by the least common denominator so a
/// nonzero remainder becomes a nonzero bivariate polynomial.  Falls back to
/// the quotient rows when the remainder is zero but the quotient is the
/// non-polynomial part.
fn clear_denominators(rem: &[RationalFunction], quot: &[RationalFunction]) -> BiPoly {
    let rows = if rem.iter().all(RationalFunction::is_zero) {
        quot
    } else {
        rem
    };
    let mut common = UniPoly::one();
    for r in rows {
        let g = common.gcd(r.den());
        common = &common * &r.den().exact_div(&g).expect("gcd divides");
    }
    let cleared: Vec<UniPoly> = rows
        .iter()
        .map(|r| {
            let extra = common.exact_div(r.den()).expect("lcm divides");
            r.num() * &extra
        })
        .collect();
    BiPoly::from_rows(Var::Y, &cleared)
}
