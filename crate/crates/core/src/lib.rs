//! Exact and numeric analysis of Rawnsley epsilon functions on generalized
//! Cartan-Hartogs domains.
//!
//! A generalized Cartan-Hartogs domain is a Hartogs fibration over a product
//! of irreducible bounded symmetric domains: base factors `Omega_i` with
//! weights `mu_i > 0` and potential exponents `nu_i > -1`, and a fiber ball of
//! dimension `d_0`.  For the natural Kaehler potential the epsilon function of
//! the weighted Bergman metric admits an expansion in powers of `1 - s`, where
//! `s` is the squared fiber radius in normalized coordinates; whether that
//! expansion terminates (so epsilon is a polynomial in `s`) is decided exactly
//! here by polynomial division.
//!
//! Layered modules:
//!
//! * [`rational`] - arbitrary-precision rationals and scalar factorials,
//! * [`poly`] - dense univariate and sparse bivariate polynomials over the
//!   rationals, rational functions, finite differences, Newton forms,
//! * [`domains`] - invariants of the irreducible factors (rank, multiplicities,
//!   dimension, genus), Hua polynomials, Wallach sets, domain specifications,
//! * [`engine`] - the epsilon function itself: polynomiality verdicts, closed
//!   form coefficients, the defining series, balanced-metric checks,
//! * [`dd`] - double-double floating point used to sum the series with more
//!   than 64 mantissa bits,
//! * [`numeric`] - Monte Carlo verification of the closed forms against finite
//!   difference Hessians, diastasis sampling and boundedness sampling.
//!
//! Shared types are re-exported at the crate root.

pub mod dd;
pub mod domains;
pub mod engine;
pub mod numeric;
pub mod poly;
pub mod rational;

pub use dd::Dd;
pub use domains::{
    alpha_threshold, generalized_pochhammer, hua_polynomial, wallach_contains, CartanKind,
    DomainError, DomainSpec, Factor, IrreducibleDomainParams, Partition, Violation,
};
pub use engine::{
    balanced_check, berezin_report, epsilon_coeffs, epsilon_series, feng_tu_reduction_check,
    kernel_eval, phi_build, phi_build_symbolic, polynomiality_check, psi_eval, psi_parts,
    psi_parts_at, sigma, sigma_all, AlphaMode, BalancedCheck, EngineError, EpsilonClosedForm,
    EpsilonReport, PhiForm, PolynomialityStatus, PolynomialityVerdict, PsiParts, SeriesEval,
};
pub use numeric::{
    boundedness_sample, complex_hessian_fd, diastasis_check, epsilon_invariance_check,
    generic_norm, monge_ampere_check, potential_eval, sample_point, BoundednessReport,
    FactorPoint, FullPoint, MongeAmpereCheck, NumericError,
};
pub use poly::{
    finite_difference, finite_difference_fn, newton_reconstruct, rising_factorial_poly, BiPoly,
    PolyError, RationalFunction, UniPoly, Var,
};
pub use rational::Rat;
