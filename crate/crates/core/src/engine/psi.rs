//! The combinatorial weights `sigma` and the exact rational expansion term
//! `psi` behind the epsilon series.
//!
//! For a specification with base factors `(Omega_i, mu_i, nu_i)`, base
//! dimension `d` and total dimension `n`:
//!
//! * `sigma(t)` is the coefficient of `y^(d-t)` in `prod_i (1 + nu_i y)^(d_i)`,
//! * `psi(x, y)` is the quotient of
//!   `prod_i chi_i(mu_i ((1 + nu_i) x + y) - p_i)` by
//!   `prod_i mu_i^(d_i) * sum_t sigma(t) (x - n)_(d-t) (x + y - t)_t`,
//!
//! where `chi_i` is the Hua polynomial of the factor.  Both parts are exact
//! bivariate polynomials; the series layer evaluates them at `x = alpha` and
//! integer `y = t`.

use num_traits::{One, Zero};

use crate::domains::{alpha_threshold, hua_polynomial, DomainSpec};
use crate::poly::{compose_uni_linear, rising_factorial_poly, BiPoly, UniPoly, Var};
use crate::rational::{pow_i, rat, Rat};

use super::EngineError;

/// All weights `sigma(0) ..= sigma(d)` at once.
///
/// `sigma(d) = 1` and `sigma(0) = prod_i nu_i^(d_i)`.
pub fn sigma_all(spec: &DomainSpec) -> Vec<Rat> {
    let d = spec.base_dim() as usize;
    let mut gen = UniPoly::one();
    for f in spec.factors() {
        let lin = UniPoly::from_coeffs(vec![Rat::one(), f.nu().clone()]);
        gen = &gen * &lin.pow(f.params().dim());
    }
    (0..=d).map(|t| gen.coeff(d - t)).collect()
}

/// The single weight `sigma(t)`, `0 <= t <= d`.
pub fn sigma(spec: &DomainSpec, t: u32) -> Result<Rat, EngineError> {
    let d = spec.base_dim();
    if t > d {
        return Err(EngineError::IndexOutOfRange { index: t, max: d });
    }
    Ok(sigma_all(spec)[t as usize].clone())
}

/// Numerator and denominator of `psi` as polynomials in `(x, y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiParts {
    pub num: BiPoly,
    pub den: BiPoly,
}

/// Builds both parts of `psi` exactly.
pub fn psi_parts(spec: &DomainSpec) -> PsiParts {
    let d = spec.base_dim();
    let n = spec.total_dim() as i64;
    let mut num = BiPoly::one();
    for f in spec.factors() {
        let chi = hua_polynomial(f.params());
        let a = f.mu() * (Rat::one() + f.nu());
        num = &num * &compose_uni_linear(&chi, &a, f.mu(), &-rat(f.params().genus() as i64));
    }

    let sig = sigma_all(spec);
    let mut den = BiPoly::zero();
    for (t, st) in sig.iter().enumerate() {
        if st.is_zero() {
            continue;
        }
        let left = BiPoly::from_uni(Var::X, &rising_factorial_poly(&rat(-n), d - t as u32));
        let right = compose_uni_linear(
            &rising_factorial_poly(&rat(-(t as i64)), t as u32),
            &Rat::one(),
            &Rat::one(),
            &Rat::zero(),
        );
        den = &den + &(&left * &right).scale(st);
    }
    den = den.scale(&mu_power(spec));
    PsiParts { num, den }
}

/// Both parts with `x = alpha` substituted, univariate in `y`.
pub fn psi_parts_at(spec: &DomainSpec, alpha: &Rat) -> (UniPoly, UniPoly) {
    let parts = psi_parts(spec);
    (parts.num.eval_x(alpha), parts.den.eval_x(alpha))
}

/// Evaluates `psi(alpha, t)` exactly.
///
/// Requires `alpha` strictly above the admissibility threshold, which keeps
/// the denominator positive; a vanishing denominator is still reported as an
/// error rather than a panic.
pub fn psi_eval(spec: &DomainSpec, alpha: &Rat, t: u32) -> Result<Rat, EngineError> {
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
    let parts = psi_parts(spec);
    let y = rat(t as i64);
    let den = parts.den.eval(alpha, &y);
    if den.is_zero() {
        return Err(EngineError::PsiPole { t });
    }
    Ok(parts.num.eval(alpha, &y) / den)
}

/// `prod_i mu_i^(d_i)`.
pub fn mu_power(spec: &DomainSpec) -> Rat {
    let mut acc = Rat::one();
    for f in spec.factors() {
        acc *= pow_i(f.mu(), f.params().dim() as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{CartanKind, Factor};
    use crate::rational::ratio;

    fn thullen(mu: Rat, nu: Rat) -> DomainSpec {
        DomainSpec::new(vec![Factor::new(CartanKind::disc(), mu, nu).unwrap()], 1)
    }

    fn two_discs(nu1: Rat, nu2: Rat) -> DomainSpec {
        DomainSpec::new(
            vec![
                Factor::new(CartanKind::disc(), rat(1), nu1).unwrap(),
                Factor::new(CartanKind::disc(), rat(1), nu2).unwrap(),
            ],
            1,
        )
    }

    #[test]
    fn sigma_single_disc() {
        // Generating product (1 + nu y): sigma(0) = nu, sigma(1) = 1.
        let spec = thullen(rat(1), ratio(1, 2));
        assert_eq!(sigma_all(&spec), vec![ratio(1, 2), rat(1)]);
        assert_eq!(sigma(&spec, 0).unwrap(), ratio(1, 2));
        assert!(sigma(&spec, 2).is_err());
    }

    #[test]
    fn sigma_two_discs_by_hand() {
        // (1 + y/2)(1 + 2y) = y^2 + 5/2 y + 1.
        let spec = two_discs(ratio(1, 2), rat(2));
        assert_eq!(sigma_all(&spec), vec![rat(1), ratio(5, 2), rat(1)]);
    }

    #[test]
    fn sigma_brute_force_small() {
        // Independent enumeration over multi-indices t_i summing to d - t.
        let spec = two_discs(ratio(1, 3), rat(-2));
        let nus = [ratio(1, 3), rat(-2)];
        for t in 0..=2u32 {
            let want: Rat = (0..=2u32 - t)
                .map(|t1| {
                    let t2 = 2 - t - t1;
                    if t1 > 1 || t2 > 1 {
                        return rat(0);
                    }
                    pow_i(&nus[0], t1 as i64) * pow_i(&nus[1], t2 as i64)
                })
                .sum();
            assert_eq!(sigma(&spec, t).unwrap(), want);
        }
    }

    #[test]
    fn psi_parts_thullen_by_hand() {
        // mu = 1, nu = 1: numerator 2x + y - 1, denominator 2x + y - 3.
        let parts = psi_parts(&thullen(rat(1), rat(1)));
        let want_num = BiPoly::linear(rat(2), rat(1), rat(-1));
        let want_den = BiPoly::linear(rat(2), rat(1), rat(-3));
        assert_eq!(parts.num, want_num);
        assert_eq!(parts.den, want_den);
    }

    #[test]
    fn psi_is_one_in_the_balanced_case() {
        // mu = 1, nu = 0: both parts are x + y - 1.
        let parts = psi_parts(&thullen(rat(1), rat(0)));
        assert_eq!(parts.num, parts.den);
        assert_eq!(parts.num, BiPoly::linear(rat(1), rat(1), rat(-1)));
        assert_eq!(psi_eval(&thullen(rat(1), rat(0)), &rat(5), 0).unwrap(), rat(1));
    }

    #[test]
    fn psi_eval_by_hand() {
        // mu = 1, nu = 1 at alpha = 5, t = 0: (10 - 1)/(10 - 3) = 9/7.
        let spec = thullen(rat(1), rat(1));
        assert_eq!(psi_eval(&spec, &rat(5), 0).unwrap(), ratio(9, 7));
        // t = 3: (10 + 3 - 1)/(10 + 3 - 3) = 6/5.
        assert_eq!(psi_eval(&spec, &rat(5), 3).unwrap(), ratio(6, 5));
    }

    #[test]
    fn psi_eval_guards_threshold() {
        let spec = thullen(rat(1), rat(1));
        assert!(matches!(
            psi_eval(&spec, &rat(2), 0),
            Err(EngineError::AlphaBelowThreshold { .. })
        ));
    }

    #[test]
    fn leading_y_coefficient_is_mu_power() {
        // In both parts the y-degree is d and the top coefficient in y is the
        // constant prod mu_i^(d_i); their difference has smaller y-degree.
        let spec = DomainSpec::new(
            vec![
                Factor::new(CartanKind::TypeI { m: 2, n: 2 }, ratio(1, 2), ratio(1, 3)).unwrap(),
                Factor::new(CartanKind::disc(), rat(3), ratio(-1, 2)).unwrap(),
            ],
            2,
        );
        let d = spec.base_dim();
        let parts = psi_parts(&spec);
        let mp = mu_power(&spec);
        for part in [&parts.num, &parts.den] {
            assert_eq!(part.deg_y(), Some(d));
            let top = part.rows(Var::Y).last().cloned().unwrap();
            assert_eq!(top, UniPoly::constant(mp.clone()));
        }
        let diff = &parts.num - &parts.den;
        assert!(diff.deg_y() < Some(d));
    }
}
