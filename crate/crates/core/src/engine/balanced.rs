//! Balanced metrics, Berezin quantization admissibility and the vanishing-nu
//! reduction cross-check.
//!
//! The weight-`alpha` metric is balanced for every admissible `alpha` exactly
//! when the numerator of `psi` equals
//!
//! ```text
//! prod_i mu_i^(d_i) * sum_t sigma(d - t) (x - n)_t (x + y - d + t)_(d - t)
//! ```
//!
//! as a bivariate polynomial, which re-indexes the denominator of `psi` term
//! by term (`t -> d - t`); when that identity holds, `psi = 1`, `phi` is the
//! raising factorial `(x - d)_d` and epsilon collapses to the constant
//! `(alpha - n)_n`.

use num_traits::Zero;

use crate::domains::{hua_polynomial, wallach_contains, DomainSpec};
use crate::poly::{compose_uni_linear, finite_difference, rising_factorial_poly, BiPoly, UniPoly, Var};
use crate::rational::{factorial, rat, rising_factorial, Rat};

use super::epsilon::epsilon_coeffs;
use super::phi::{polynomiality_check, AlphaMode, PolynomialityStatus, PolynomialityVerdict};
use super::psi::{mu_power, psi_parts, sigma_all};
use super::EngineError;

/// Outcome of [`balanced_check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BalancedCheck {
    /// Whether the balanced identity holds exactly.
    pub balanced: bool,
    /// Numerator minus the re-indexed denominator; zero when balanced.
    pub residual: BiPoly,
    /// Whether the re-indexed sum reproduces the stored denominator exactly.
    /// This is an internal identity and must always hold.
    pub reindex_consistent: bool,
}

/// Compares the `psi` numerator against the re-indexed denominator.
pub fn balanced_check(spec: &DomainSpec) -> Result<BalancedCheck, EngineError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidSpec(violations));
    }
    let parts = psi_parts(spec);
    let d = spec.base_dim();
    let n = spec.total_dim() as i64;
    let sig = sigma_all(spec);

    let mut rhs = BiPoly::zero();
    for t in 0..=d {
        let st = &sig[(d - t) as usize];
        if st.is_zero() {
            continue;
        }
        let left = BiPoly::from_uni(Var::X, &rising_factorial_poly(&rat(-n), t));
        let right = compose_uni_linear(
            &rising_factorial_poly(&rat(-((d - t) as i64)), d - t),
            &rat(1),
            &rat(1),
            &rat(0),
        );
        rhs = &rhs + &(&left * &right).scale(st);
    }
    rhs = rhs.scale(&mu_power(spec));

    let residual = &parts.num - &rhs;
    Ok(BalancedCheck {
        balanced: residual.is_zero(),
        residual,
        reindex_consistent: rhs == parts.den,
    })
}

/// Summary report for a specification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsilonReport {
    /// Symbolic polynomiality verdict.
    pub verdict: PolynomialityVerdict,
    /// Whether the metric is balanced for every admissible weight.
    pub balanced: bool,
    /// Whether every factor weight lies in the Wallach set of its factor.
    pub wallach_ok: bool,
    /// Positivity of all Berezin quantization ingredients: Wallach weights
    /// together with polynomiality for every admissible `alpha`.
    pub berezin_admissible: bool,
    /// Strict lower bound on admissible `alpha`.
    pub alpha_threshold: Rat,
}

/// Builds the summary report.
pub fn berezin_report(spec: &DomainSpec) -> Result<EpsilonReport, EngineError> {
    let verdict = polynomiality_check(spec, AlphaMode::Symbolic)?;
    let balanced = balanced_check(spec)?.balanced;
    let wallach_ok = spec
        .factors()
        .iter()
        .all(|f| wallach_contains(f.params(), f.mu()));
    let berezin_admissible =
        wallach_ok && verdict.status == PolynomialityStatus::PolynomialAllAlpha;
    Ok(EpsilonReport {
        verdict,
        balanced,
        wallach_ok,
        berezin_admissible,
        alpha_threshold: crate::domains::alpha_threshold(spec),
    })
}

/// Cross-checks the closed form against the direct construction available
/// when every `nu_i = 0`: there `phi` is independently
/// `prod_i mu_i^(-d_i) chi_i(mu_i x - p_i)` and the coefficients follow from
/// its differences.  Returns whether the two coefficient lists agree exactly.
pub fn feng_tu_reduction_check(spec: &DomainSpec, alpha: &Rat) -> Result<bool, EngineError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidSpec(violations));
    }
    if spec.factors().iter().any(|f| !f.nu().is_zero()) {
        return Err(EngineError::RequiresVanishingNu);
    }
    let d = spec.base_dim();
    let n = rat(spec.total_dim() as i64);
    let d0 = spec.fiber_dim();

    let mut chi_tilde = UniPoly::one();
    for f in spec.factors() {
        let chi = hua_polynomial(f.params());
        chi_tilde = &chi_tilde * &chi.compose_affine(f.mu(), &-rat(f.params().genus() as i64));
    }
    chi_tilde = chi_tilde.scale(&mu_power(spec).recip());

    let at = rat(d as i64);
    let mut expect = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let dj = finite_difference(&chi_tilde, j, &at);
        expect.push(&dj / factorial(j) * rising_factorial(&(alpha - &n), d0 + j));
    }

    let cf = epsilon_coeffs(spec, alpha)?;
    Ok(cf.coeffs == expect)
}
