//! Property suites for the exact algebra layer: algebraic identities that
//! must hold for arbitrary inputs, not just the worked examples.

use hartogs_core::poly::{finite_difference, newton_reconstruct, BiPoly, UniPoly, Var};
use hartogs_core::rational::{rat, ratio, Rat};
use hartogs_core::RationalFunction;
use num_traits::One;
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| ratio(n, d))
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(arb_rat(), 0..=max_len).prop_map(UniPoly::from_coeffs)
}

fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), arb_rat()), 0..6).prop_map(|terms| {
        let mut acc = BiPoly::zero();
        for ((i, j), c) in terms {
            let term = &BiPoly::from_uni(Var::X, &UniPoly::monomial(i as usize, c))
                * &BiPoly::from_uni(Var::Y, &UniPoly::monomial(j as usize, Rat::one()));
            acc = &acc + &term;
        }
        acc
    })
}

proptest! {
    #[test]
    fn division_inverts_multiplication(p in arb_poly(6), q in arb_poly(5)) {
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        let (quot, rem) = prod.div_rem(&q).unwrap();
        prop_assert_eq!(quot, p);
        prop_assert!(rem.is_zero());
    }

    #[test]
    fn division_round_trips_with_remainder(p in arb_poly(7), q in arb_poly(4)) {
        prop_assume!(!q.is_zero());
        let (quot, rem) = p.div_rem(&q).unwrap();
        if let Some(rd) = rem.degree() {
            prop_assert!(rd < q.degree().unwrap());
        }
        prop_assert_eq!(&(&quot * &q) + &rem, p);
    }

    #[test]
    fn newton_form_round_trips(p in arb_poly(7)) {
        let d = p.degree().unwrap_or(0);
        let at = rat(d as i64);
        let diffs: Vec<Rat> = (0..=d as u32)
            .map(|j| finite_difference(&p, j, &at))
            .collect();
        prop_assert_eq!(newton_reconstruct(&diffs), p);
    }

    #[test]
    fn affine_composition_matches_pointwise(p in arb_poly(6), c in arb_rat(), e in arb_rat(), x in arb_rat()) {
        let composed = p.compose_affine(&c, &e);
        prop_assert_eq!(composed.eval(&x), p.eval(&(&c * &x + &e)));
    }

    #[test]
    fn bivariate_exact_division_recovers_the_factor(a in arb_bipoly(), b in arb_bipoly(), var in prop::sample::select(vec![Var::X, Var::Y])) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        let q = prod.exact_div(&b, var);
        prop_assert_eq!(q, Some(a));
    }

    #[test]
    fn rational_function_field_laws(
        an in arb_poly(4), ad in arb_poly(3),
        bn in arb_poly(4), bd in arb_poly(3),
    ) {
        prop_assume!(!ad.is_zero() && !bd.is_zero() && !bn.is_zero());
        let f = RationalFunction::new(an, ad).unwrap();
        let g = RationalFunction::new(bn, bd).unwrap();
        let sum_back = &(&f + &g) - &g;
        prop_assert_eq!(&sum_back, &f);
        let prod_back = (&f * &g).div(&g).unwrap();
        prop_assert_eq!(prod_back, f);
    }
}
