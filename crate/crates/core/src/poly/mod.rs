//! Exact polynomial arithmetic over the rationals.
//!
//! * [`UniPoly`] - dense univariate polynomials, long division, gcd, raising
//!   factorials, finite differences and Newton reconstruction,
//! * [`BiPoly`] - sparse bivariate polynomials with exact division over the
//!   rational function field in either variable,
//! * [`RationalFunction`] - reduced quotients of univariate polynomials.

mod bi;
mod ratfn;
mod uni;

pub use bi::{compose_uni_linear, BiPoly, Var};
pub use ratfn::RationalFunction;
pub use uni::{
    finite_difference, finite_difference_fn, newton_reconstruct, rising_factorial_poly, UniPoly,
};

/// Errors from exact polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation at a pole of the reduced denominator")]
    Pole,
}
