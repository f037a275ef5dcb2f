//! Floating point verification layer: sampled points, finite difference
//! geometry and diastasis checks validating the exact layers from outside.
//!
//! * [`point`]: coordinates, generic norms, membership and seeded sampling.
//! * [`potential`]: the Kahler potential, its finite difference complex
//!   Hessian and the Monge-Ampere determinant cross-check.
//! * [`diastasis`]: the `exp(-D)` evaluation and the sampled cross term
//!   boundedness certificate.
//!
//! Everything here is deliberately derivative: closed forms come from the
//! exact engine, while these routines recompute the same quantities from
//! raw coordinates so disagreements surface as test failures rather than
//! silent drift.

use num_complex::Complex64;
use thiserror::Error;

use crate::engine::EngineError;
use crate::rational::Rat;

pub mod diastasis;
pub mod point;
pub mod potential;

pub use diastasis::{beta_threshold, boundedness_sample, diastasis_check, BoundednessReport};
pub use point::{
    check_shape, coord_len, factor_inside, generic_norm, is_inside, normalized_fiber_radius,
    sample_point, substream, FactorPoint, FullPoint, SAMPLE_MARGIN,
};
pub use potential::{
    complex_hessian_fd, epsilon_invariance_check, monge_ampere_check, potential_eval,
    MongeAmpereCheck,
};

/// Failures of the floating point layer.
#[derive(Error, Clone, PartialEq, Debug)]
pub enum NumericError {
    /// Factor kind without a coordinate realization here.
    #[error("numeric evaluation is not implemented for factors of type {kind}")]
    UnsupportedFactor { kind: String },
    /// Point layout does not match the specification.
    #[error("wrong {what}: expected {expected}, got {got}")]
    WrongShape {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A log or power was taken outside the domain of definition.
    #[error("point lies outside the domain")]
    OutsideDomain,
    /// A principal branch power hit the negative real axis.
    #[error("principal branch power evaluated on its branch cut")]
    BranchCut,
    /// A finite difference stencil of this step would leave the domain.
    #[error("finite difference step {h} pushes the stencil outside the domain")]
    StepTooLarge { h: f64 },
    /// Scaling weight at or below the positivity threshold.
    // Boxed so the whole enum stays small on the Ok path.
    #[error("weight {beta} is not above the diastasis threshold {threshold}")]
    BetaBelowThreshold { beta: Box<Rat>, threshold: Box<Rat> },
    /// An exact engine computation failed.
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Convenience constructor for test and bench points.
pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
