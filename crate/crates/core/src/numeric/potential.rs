//! Kahler potential, finite difference complex Hessian, and the
//! determinant cross-check against the closed form.
//!
//! The potential of the fibration metric is
//! `Phi = -sum_i nu_i mu_i ln N_i - ln(prod_i N_i^(mu_i) - |w|^2)`,
//! and its complex Hessian determinant has the closed form
//! `(1-s)^(-(d_0+1)) prod_i [mu_i^(d_i) (nu_i + 1/(1-s))^(d_i) /
//! N_i^(p_i + mu_i d_0)]` with `s` the normalized squared fiber radius.
//! The finite difference Hessian here is deliberately independent of that
//! formula so the two can be compared at sampled points.

use num_complex::Complex64;

use crate::domains::DomainSpec;
use crate::engine::{epsilon_coeffs, kernel_eval};
use crate::rational::{to_f64, Rat};

use super::point::{
    check_shape, coord_len, det_in_place, generic_norm, is_inside, normalized_fiber_radius,
    FactorPoint, FullPoint,
};
use super::NumericError;

/// Potential `Phi` at an interior point.
pub fn potential_eval(spec: &DomainSpec, point: &FullPoint) -> Result<f64, NumericError> {
    check_shape(spec, point)?;
    let mut phi = 0.0f64;
    let mut prod = 1.0f64;
    for (f, z) in spec.factors().iter().zip(&point.factors) {
        let n = generic_norm(f.kind(), z, z)?.re;
        if n <= 0.0 {
            return Err(NumericError::OutsideDomain);
        }
        phi -= to_f64(f.nu()) * to_f64(f.mu()) * n.ln();
        prod *= n.powf(to_f64(f.mu()));
    }
    let w2: f64 = point.fiber.iter().map(|c| c.norm_sqr()).sum();
    let arg = prod - w2;
    if arg <= 0.0 {
        return Err(NumericError::OutsideDomain);
    }
    Ok(phi - arg.ln())
}

fn to_reals(point: &FullPoint) -> Vec<f64> {
    let mut out = Vec::new();
    for f in &point.factors {
        for c in &f.coords {
            out.push(c.re);
            out.push(c.im);
        }
    }
    for c in &point.fiber {
        out.push(c.re);
        out.push(c.im);
    }
    out
}

fn from_reals(spec: &DomainSpec, reals: &[f64]) -> Result<FullPoint, NumericError> {
    let mut it = reals.chunks_exact(2).map(|p| Complex64::new(p[0], p[1]));
    let mut factors = Vec::with_capacity(spec.factors().len());
    for f in spec.factors() {
        let len = coord_len(f.kind())?;
        factors.push(FactorPoint {
            coords: it.by_ref().take(len).collect(),
        });
    }
    Ok(FullPoint {
        factors,
        fiber: it.collect(),
    })
}

/// Complex Hessian `H_jk = d^2 Phi / (dz_j dz_k^bar)` by second order central
/// differences with step `h`.
///
/// Every single-coordinate perturbation by `4h` must stay inside the domain;
/// otherwise the stencil is rejected with [`NumericError::StepTooLarge`].
pub fn complex_hessian_fd(
    spec: &DomainSpec,
    point: &FullPoint,
    h: f64,
) -> Result<Vec<Vec<Complex64>>, NumericError> {
    check_shape(spec, point)?;
    if !h.is_finite() || h <= 0.0 {
        return Err(NumericError::StepTooLarge { h });
    }
    let base = to_reals(point);
    let m = base.len();
    for a in 0..m {
        for sign in [-4.0, 4.0] {
            let mut p = base.clone();
            p[a] += sign * h;
            if !is_inside(spec, &from_reals(spec, &p)?, 0.0)? {
                return Err(NumericError::StepTooLarge { h });
            }
        }
    }
    let eval = |r: &[f64]| potential_eval(spec, &from_reals(spec, r)?);
    let f0 = eval(&base)?;
    let mut real_hess = vec![vec![0.0f64; m]; m];
    let h2 = h * h;
    for a in 0..m {
        let mut plus = base.clone();
        plus[a] += h;
        let mut minus = base.clone();
        minus[a] -= h;
        real_hess[a][a] = (eval(&plus)? - 2.0 * f0 + eval(&minus)?) / h2;
        for b in a + 1..m {
            let mut v = 0.0;
            for (sa, sb, w) in [
                (h, h, 1.0),
                (h, -h, -1.0),
                (-h, h, -1.0),
                (-h, -h, 1.0),
            ] {
                let mut p = base.clone();
                p[a] += sa;
                p[b] += sb;
                v += w * eval(&p)?;
            }
            let v = v / (4.0 * h2);
            real_hess[a][b] = v;
            real_hess[b][a] = v;
        }
    }
    // Wirtinger combination: with x_j = Re z_j, y_j = Im z_j,
    // H_jk = 1/4 [(d_xj d_xk + d_yj d_yk) + i (d_xj d_yk - d_yj d_xk)] Phi.
    let n = m / 2;
    let mut hess = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (j, row) in hess.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            let (xj, yj) = (2 * j, 2 * j + 1);
            let (xk, yk) = (2 * k, 2 * k + 1);
            *entry = 0.25
                * Complex64::new(
                    real_hess[xj][xk] + real_hess[yj][yk],
                    real_hess[xj][yk] - real_hess[yj][xk],
                );
        }
    }
    Ok(hess)
}

/// Outcome of comparing the finite difference Hessian determinant with the
/// closed form determinant.
#[derive(Clone, PartialEq, Debug)]
pub struct MongeAmpereCheck {
    pub det_fd: f64,
    pub det_closed: f64,
    pub rel_error: f64,
}

/// Determinant of the finite difference Hessian versus the closed form, at
/// one interior point.
pub fn monge_ampere_check(
    spec: &DomainSpec,
    point: &FullPoint,
    h: f64,
) -> Result<MongeAmpereCheck, NumericError> {
    let hess = complex_hessian_fd(spec, point, h)?;
    let det_fd = det_in_place(hess).re;
    let s = normalized_fiber_radius(spec, point)?;
    if s >= 1.0 {
        return Err(NumericError::OutsideDomain);
    }
    let one_minus = 1.0 - s;
    let d0 = spec.fiber_dim();
    let mut det_closed = one_minus.powi(-(d0 as i32 + 1));
    for (f, z) in spec.factors().iter().zip(&point.factors) {
        let n = generic_norm(f.kind(), z, z)?.re;
        let dim = f.params().dim() as i32;
        let mu = to_f64(f.mu());
        let nu = to_f64(f.nu());
        det_closed *= mu.powi(dim) * (nu + 1.0 / one_minus).powi(dim)
            / n.powf(f.params().genus() as f64 + mu * d0 as f64);
    }
    let rel_error = (det_fd - det_closed).abs() / det_closed.abs();
    Ok(MongeAmpereCheck {
        det_fd,
        det_closed,
        rel_error,
    })
}

/// Largest relative disagreement between routes to the epsilon value at a
/// point: the exact closed form at the point's normalized radius, the same
/// closed form at a fiber-axis point built to share that radius, and the
/// kernel adapter round trip `exp(-alpha Phi) K(s)`.
///
/// The epsilon function depends on the point only through `s`, so all
/// routes must coincide up to floating point error.
pub fn epsilon_invariance_check(
    spec: &DomainSpec,
    alpha: &Rat,
    point: &FullPoint,
) -> Result<f64, NumericError> {
    let s = normalized_fiber_radius(spec, point)?;
    if !(0.0..1.0).contains(&s) {
        return Err(NumericError::OutsideDomain);
    }
    let form = epsilon_coeffs(spec, alpha)?;
    let s_rat = Rat::from_float(s).expect("finite radius");
    let closed = to_f64(&form.eval(&s_rat));
    // Base blocks at the origin make the norm product one, so the axis
    // point reaches the same s through a different coordinate pipeline.
    let mut factors = Vec::with_capacity(spec.factors().len());
    for f in spec.factors() {
        factors.push(FactorPoint {
            coords: vec![Complex64::new(0.0, 0.0); coord_len(f.kind())?],
        });
    }
    let mut fiber = vec![Complex64::new(0.0, 0.0); spec.fiber_dim() as usize];
    fiber[0] = Complex64::new(s.sqrt(), 0.0);
    let axis = FullPoint { factors, fiber };
    let s_axis = normalized_fiber_radius(spec, &axis)?;
    let axis_val = to_f64(&form.eval(&Rat::from_float(s_axis).expect("finite radius")));
    let phi = potential_eval(spec, point)?;
    let kernel = kernel_eval(spec, alpha, &s_rat, phi)?;
    let round_trip = (-to_f64(alpha) * phi).exp() * kernel;
    let scale = closed.abs().max(1.0);
    let worst = (closed - axis_val).abs().max((closed - round_trip).abs());
    Ok(worst / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{CartanKind, Factor};
    use crate::numeric::point::{sample_point, substream, SAMPLE_MARGIN};
    use crate::rational::{rat, ratio};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn thullen(mu: Rat, nu: Rat) -> DomainSpec {
        DomainSpec::new(vec![Factor::new(CartanKind::disc(), mu, nu).unwrap()], 1)
    }

    #[test]
    fn potential_on_the_fiber_axis() {
        let spec = thullen(ratio(1, 2), ratio(1, 2));
        let p = FullPoint {
            factors: vec![FactorPoint {
                coords: vec![c(0.0, 0.0)],
            }],
            fiber: vec![c(0.3, 0.4)],
        };
        // N = 1, so Phi = -ln(1 - |w|^2) = -ln(0.75).
        let phi = potential_eval(&spec, &p).unwrap();
        assert!((phi + 0.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn potential_on_the_base() {
        let spec = thullen(ratio(1, 2), ratio(1, 3));
        let p = FullPoint {
            factors: vec![FactorPoint {
                coords: vec![c(0.6, 0.0)],
            }],
            fiber: vec![c(0.0, 0.0)],
        };
        // Phi = -mu (1 + nu) ln N with N = 1 - 0.36.
        let expect = -0.5 * (4.0 / 3.0) * 0.64f64.ln();
        assert!((potential_eval(&spec, &p).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn potential_rejects_exterior_points() {
        let spec = thullen(rat(1), rat(0));
        let outside = FullPoint {
            factors: vec![FactorPoint {
                coords: vec![c(0.9, 0.0)],
            }],
            fiber: vec![c(0.7, 0.0)],
        };
        // |w|^2 = 0.49 > N^mu = 0.19.
        assert!(matches!(
            potential_eval(&spec, &outside),
            Err(NumericError::OutsideDomain)
        ));
    }

    #[test]
    fn hessian_at_the_origin_is_diagonal() {
        let spec = thullen(ratio(1, 2), ratio(1, 2));
        let origin = FullPoint {
            factors: vec![FactorPoint {
                coords: vec![c(0.0, 0.0)],
            }],
            fiber: vec![c(0.0, 0.0)],
        };
        let h = complex_hessian_fd(&spec, &origin, 1e-4).unwrap();
        // Quadratic expansion gives diag(mu (1 + nu), 1) = diag(3/4, 1).
        assert!((h[0][0].re - 0.75).abs() < 1e-6);
        assert!((h[1][1].re - 1.0).abs() < 1e-6);
        assert!(h[0][1].norm() < 1e-6);
        assert!(h[1][0].norm() < 1e-6);
    }

    #[test]
    fn hessian_is_hermitian_at_random_points() {
        let spec = DomainSpec::new(
            vec![
                Factor::new(CartanKind::ball(2), ratio(1, 2), ratio(1, 4)).unwrap(),
                Factor::new(CartanKind::disc(), rat(1), rat(0)).unwrap(),
            ],
            1,
        );
        let p = sample_point(&spec, &mut substream(11, 0), 0.05).unwrap();
        let h = complex_hessian_fd(&spec, &p, 1e-3).unwrap();
        for (j, row) in h.iter().enumerate() {
            for (k, entry) in row.iter().enumerate() {
                assert!((entry - h[k][j].conj()).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn step_guard_rejects_boundary_stencils() {
        let spec = thullen(rat(1), rat(0));
        let near_edge = FullPoint {
            factors: vec![FactorPoint {
                coords: vec![c(0.999, 0.0)],
            }],
            fiber: vec![c(0.0, 0.0)],
        };
        assert!(matches!(
            complex_hessian_fd(&spec, &near_edge, 1e-2),
            Err(NumericError::StepTooLarge { .. })
        ));
    }

    #[test]
    fn determinant_matches_closed_form_on_thullen() {
        let spec = thullen(ratio(1, 2), ratio(1, 2));
        for idx in 0..3u64 {
            let p = sample_point(&spec, &mut substream(5, idx), 0.05).unwrap();
            let check = monge_ampere_check(&spec, &p, 1e-3).unwrap();
            assert!(
                check.rel_error < 1e-4,
                "relative error {} at sample {idx}",
                check.rel_error
            );
        }
    }

    #[test]
    fn determinant_matches_closed_form_with_matrix_factor() {
        let spec = DomainSpec::new(
            vec![Factor::new(CartanKind::TypeI { m: 2, n: 2 }, ratio(1, 3), ratio(1, 5)).unwrap()],
            2,
        );
        // Potential derivatives grow near the boundary and inflate the h^2
        // truncation term, so sample well inside.
        let p = sample_point(&spec, &mut substream(6, 1), 0.3).unwrap();
        let check = monge_ampere_check(&spec, &p, 1e-3).unwrap();
        assert!(
            check.rel_error < 1e-4,
            "relative error {}",
            check.rel_error
        );
    }

    #[test]
    fn epsilon_routes_agree_at_sampled_points() {
        let spec = thullen(ratio(1, 2), ratio(1, 2));
        // Threshold is 2; alpha = 3 keeps the closed form and series exact.
        for idx in 0..3u64 {
            let p = sample_point(&spec, &mut substream(21, idx), SAMPLE_MARGIN).unwrap();
            let err = epsilon_invariance_check(&spec, &rat(3), &p).unwrap();
            assert!(err < 1e-10, "route disagreement {err} at sample {idx}");
        }
    }
}
