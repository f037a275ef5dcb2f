//! Diastasis evaluation and the sampled boundedness certificate.
//!
//! `exp(-D)` for the scaled metric `beta g` has a closed sesquianalytic
//! expression built from generic norms at mixed arguments; it is well
//! defined once `beta` exceeds `max_i (r_i - 1) a_i / (2 mu_i (1 + nu_i))`,
//! equals `1` exactly on the diagonal, and never exceeds `1`.
//!
//! The boundedness certificate samples pairs of interior points and checks
//! the cross term `w eta^t prod_i N_i(z_i, xi_i)^(-mu_i)` stays strictly
//! inside the unit disc, which caps the linear coefficient of the epsilon
//! expansion in the weight.

use num_complex::Complex64;

use crate::domains::{alpha_threshold, DomainSpec};
use crate::engine::phi_build;
use crate::poly::finite_difference;
use crate::rational::{factorial, rat, ratio, to_f64, Rat};

use super::point::{check_shape, generic_norm, sample_point, substream, FullPoint, SAMPLE_MARGIN};
use super::NumericError;

/// Scaling weights must exceed this for the diastasis expansion to have
/// positive coefficients: `max_i (r_i - 1) a_i / (2 mu_i (1 + nu_i))`.
pub fn beta_threshold(spec: &DomainSpec) -> Rat {
    let mut best = Rat::from_integer(0.into());
    for f in spec.factors() {
        let p = f.params();
        let num = rat(((p.rank() - 1) * p.mult_a()) as i64);
        let den = ratio(2, 1) * f.mu() * (rat(1) + f.nu());
        let cand = num / den;
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Principal branch power, rejecting arguments on the closed negative real
/// axis where the branch is discontinuous.
fn principal_pow(z: Complex64, p: f64) -> Result<Complex64, NumericError> {
    let r = z.norm();
    if r == 0.0 || (z.re <= 0.0 && z.im.abs() <= 1e-14 * r) {
        return Err(NumericError::BranchCut);
    }
    Ok(z.powf(p))
}

fn fiber_inner(w: &[Complex64], eta: &[Complex64]) -> Complex64 {
    w.iter().zip(eta).map(|(a, b)| a * b.conj()).sum()
}

/// `exp(-D)` between two interior points for the metric scaled by `beta`.
pub fn diastasis_check(
    spec: &DomainSpec,
    beta: &Rat,
    p1: &FullPoint,
    p2: &FullPoint,
) -> Result<f64, NumericError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(crate::engine::EngineError::InvalidSpec(violations).into());
    }
    check_shape(spec, p1)?;
    check_shape(spec, p2)?;
    let threshold = beta_threshold(spec);
    if beta <= &threshold || beta <= &Rat::from_integer(0.into()) {
        return Err(NumericError::BetaBelowThreshold {
            beta: Box::new(beta.clone()),
            threshold: Box::new(threshold),
        });
    }
    let beta_f = to_f64(beta);
    let mut holomorphic = Complex64::new(1.0, 0.0);
    let mut cross_den = Complex64::new(1.0, 0.0);
    let mut diagonal = 1.0f64;
    let mut prod_z = 1.0f64;
    let mut prod_xi = 1.0f64;
    for (f, (z, xi)) in spec
        .factors()
        .iter()
        .zip(p1.factors.iter().zip(&p2.factors))
    {
        let mu = to_f64(f.mu());
        let weight = beta_f * mu * (1.0 + to_f64(f.nu()));
        let n_cross = generic_norm(f.kind(), z, xi)?;
        holomorphic *= principal_pow(n_cross, -weight)?;
        cross_den *= principal_pow(n_cross, mu)?;
        let n_z = generic_norm(f.kind(), z, z)?.re;
        let n_xi = generic_norm(f.kind(), xi, xi)?.re;
        if n_z <= 0.0 || n_xi <= 0.0 {
            return Err(NumericError::OutsideDomain);
        }
        diagonal *= n_z.powf(weight) * n_xi.powf(weight);
        prod_z *= n_z.powf(mu);
        prod_xi *= n_xi.powf(mu);
    }
    let cross = fiber_inner(&p1.fiber, &p2.fiber) / cross_den;
    holomorphic *= principal_pow(Complex64::new(1.0, 0.0) - cross, -beta_f)?;
    let w2: f64 = p1.fiber.iter().map(|c| c.norm_sqr()).sum();
    let eta2: f64 = p2.fiber.iter().map(|c| c.norm_sqr()).sum();
    let s_z = 1.0 - w2 / prod_z;
    let s_xi = 1.0 - eta2 / prod_xi;
    if s_z <= 0.0 || s_xi <= 0.0 {
        return Err(NumericError::OutsideDomain);
    }
    Ok(holomorphic.norm_sqr() * diagonal * s_z.powf(beta_f) * s_xi.powf(beta_f))
}

/// Result of sampling the cross term over pairs of interior points.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundednessReport {
    /// Number of sampled pairs.
    pub samples: usize,
    /// Largest `|w eta^t prod N^(-mu)|` seen.
    pub max_cross: f64,
    /// Largest `|1 - cross|` seen; always below `2` when the cross bound
    /// holds.
    pub max_x: f64,
    /// Whether every sampled cross term stayed strictly below `1`.
    pub cross_strictly_bounded: bool,
    /// Smallest integer weight above the admissibility threshold, used for
    /// the linear term bound.
    pub alpha: Rat,
    /// Bound `n(n+1)/2 + 2 |D^(d-1) phi(d)| / (d-1)!` on the linear
    /// coefficient of the epsilon expansion at `alpha`, when `phi` is a
    /// polynomial there.
    pub linear_term_bound: Option<f64>,
}

/// Samples `count` pairs of interior points and certifies the cross term
/// bound together with the implied cap on the epsilon linear coefficient.
pub fn boundedness_sample(
    spec: &DomainSpec,
    count: usize,
    seed: u64,
) -> Result<BoundednessReport, NumericError> {
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(crate::engine::EngineError::InvalidSpec(violations).into());
    }
    let mut max_cross = 0.0f64;
    let mut max_x = 0.0f64;
    let mut strict = true;
    for idx in 0..count {
        let p1 = sample_point(spec, &mut substream(seed, 2 * idx as u64), SAMPLE_MARGIN)?;
        let p2 = sample_point(spec, &mut substream(seed, 2 * idx as u64 + 1), SAMPLE_MARGIN)?;
        let mut den = Complex64::new(1.0, 0.0);
        for (f, (z, xi)) in spec
            .factors()
            .iter()
            .zip(p1.factors.iter().zip(&p2.factors))
        {
            den *= principal_pow(generic_norm(f.kind(), z, xi)?, to_f64(f.mu()))?;
        }
        let cross = fiber_inner(&p1.fiber, &p2.fiber) / den;
        let x = (Complex64::new(1.0, 0.0) - cross).norm();
        max_cross = max_cross.max(cross.norm());
        max_x = max_x.max(x);
        strict &= cross.norm() < 1.0;
    }
    let alpha = rat(1) + alpha_threshold(spec).floor();
    let d = spec.base_dim();
    let n = spec.total_dim() as f64;
    let linear_term_bound = phi_build(spec, &alpha)?.as_polynomial().map(|phi| {
        let lead = finite_difference(phi, d - 1, &rat(d as i64)) / factorial(d - 1);
        n * (n + 1.0) / 2.0 + 2.0 * to_f64(&lead).abs()
    });
    Ok(BoundednessReport {
        samples: count,
        max_cross,
        max_x,
        cross_strictly_bounded: strict,
        alpha,
        linear_term_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{CartanKind, Factor};
    use crate::rational::ratio;

    fn two_factor_spec() -> DomainSpec {
        DomainSpec::new(
            vec![
                Factor::new(CartanKind::TypeI { m: 2, n: 2 }, ratio(1, 2), rat(0)).unwrap(),
                Factor::new(CartanKind::disc(), rat(1), ratio(1, 2)).unwrap(),
            ],
            1,
        )
    }

    #[test]
    fn diagonal_value_is_one() {
        let spec = two_factor_spec();
        for idx in 0..4u64 {
            let p = sample_point(&spec, &mut substream(3, idx), SAMPLE_MARGIN).unwrap();
            let v = diastasis_check(&spec, &rat(3), &p, &p).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "diagonal value {v}");
        }
    }

    #[test]
    fn off_diagonal_is_symmetric_and_at_most_one() {
        let spec = two_factor_spec();
        for idx in 0..4u64 {
            let p1 = sample_point(&spec, &mut substream(9, 2 * idx), SAMPLE_MARGIN).unwrap();
            let p2 = sample_point(&spec, &mut substream(9, 2 * idx + 1), SAMPLE_MARGIN).unwrap();
            let v12 = diastasis_check(&spec, &rat(3), &p1, &p2).unwrap();
            let v21 = diastasis_check(&spec, &rat(3), &p2, &p1).unwrap();
            assert!((v12 - v21).abs() < 1e-12);
            assert!(v12 <= 1.0 + 1e-12, "value {v12} exceeds one");
            assert!(v12 > 0.0);
        }
    }

    #[test]
    fn weight_threshold_is_enforced() {
        // I(2,2) with mu = 1/2, nu = 0 forces beta > (r-1)a/(2 mu) = 2.
        let spec = DomainSpec::new(
            vec![Factor::new(CartanKind::TypeI { m: 2, n: 2 }, ratio(1, 2), rat(0)).unwrap()],
            1,
        );
        assert_eq!(beta_threshold(&spec), rat(2));
        let p = sample_point(&spec, &mut substream(1, 0), SAMPLE_MARGIN).unwrap();
        assert!(matches!(
            diastasis_check(&spec, &rat(2), &p, &p),
            Err(NumericError::BetaBelowThreshold { .. })
        ));
        assert!(diastasis_check(&spec, &rat(3), &p, &p).is_ok());
    }

    #[test]
    fn cross_term_stays_in_the_unit_disc() {
        let spec = two_factor_spec();
        let report = boundedness_sample(&spec, 50, 17).unwrap();
        assert_eq!(report.samples, 50);
        assert!(report.cross_strictly_bounded);
        assert!(report.max_cross < 1.0);
        assert!(report.max_x < 2.0);
        assert!(report.max_x >= 1.0 - report.max_cross);
    }

    #[test]
    fn linear_bound_for_the_balanced_disc() {
        // Balanced disc over a line: phi = x - 1, so the difference term
        // vanishes and the bound is n(n+1)/2 = 3 at alpha = 3.
        let spec = DomainSpec::new(
            vec![Factor::new(CartanKind::disc(), rat(1), rat(0)).unwrap()],
            1,
        );
        let report = boundedness_sample(&spec, 10, 4).unwrap();
        assert_eq!(report.alpha, rat(3));
        assert_eq!(report.linear_term_bound, Some(3.0));
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = two_factor_spec();
        let a = boundedness_sample(&spec, 20, 99).unwrap();
        let b = boundedness_sample(&spec, 20, 99).unwrap();
        assert_eq!(a, b);
    }
}
