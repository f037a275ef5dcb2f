//! Exact analysis of the epsilon function: expansion terms, polynomiality,
//! closed forms, series evaluation and balanced-metric reports.

mod balanced;
mod epsilon;
mod phi;
mod psi;

pub use balanced::{balanced_check, berezin_report, feng_tu_reduction_check, BalancedCheck, EpsilonReport};
pub use epsilon::{
    epsilon_coeffs, epsilon_series, kernel_eval, EpsilonClosedForm, SeriesEval, DEFAULT_MAX_TERMS,
    DEFAULT_SERIES_TOL,
};
pub use phi::{
    phi_build, phi_build_symbolic, polynomiality_check, AlphaCase, AlphaMode, PhiForm,
    PolynomialityStatus, PolynomialityVerdict,
};
pub use psi::{mu_power, psi_eval, psi_parts, psi_parts_at, sigma, sigma_all, PsiParts};

use crate::domains::Violation;
use crate::rational::Rat;

/// Errors from the epsilon engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("invalid domain specification: {}", format_violations(.0))]
    InvalidSpec(Vec<Violation>),
    // Boxed so the whole enum stays small on the Ok path.
    #[error("alpha = {alpha} is not above the admissibility threshold {threshold}")]
    AlphaBelowThreshold { alpha: Box<Rat>, threshold: Box<Rat> },
    #[error("series variable s = {s} must lie in [0, 1)")]
    SOutOfRange { s: Rat },
    #[error("truncation tolerance {tol} must be positive and finite")]
    InvalidTolerance { tol: f64 },
    #[error("phi is not a polynomial at this alpha")]
    NotPolynomial,
    #[error("reduction check requires every nu to vanish")]
    RequiresVanishingNu,
    #[error("index {index} exceeds the base dimension {max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("expansion denominator vanished at term {t}")]
    PsiPole { t: u32 },
    #[error("alpha is outside the supported range for series evaluation")]
    UnsupportedAlpha,
    #[error("expansion denominator degenerated")]
    DegenerateDenominator,
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
