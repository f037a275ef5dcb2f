//! Engine hot paths: symbolic polynomiality, the balanced identity, closed
//! form extraction, series summation, and the finite difference Hessian.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hartogs_core::domains::{CartanKind, DomainSpec, Factor};
use hartogs_core::engine::{
    balanced_check, epsilon_coeffs, epsilon_series, polynomiality_check, AlphaMode,
    DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL,
};
use hartogs_core::numeric::{monge_ampere_check, sample_point, substream};
use hartogs_core::rational::{rat, ratio, Rat};

fn factor(kind: CartanKind, mu: Rat, nu: Rat) -> Factor {
    Factor::new(kind, mu, nu).expect("valid factor")
}

/// Type I(2,2) times a disc over a two dimensional fiber; base dimension 5.
fn product_spec() -> DomainSpec {
    DomainSpec::new(
        vec![
            factor(CartanKind::TypeI { m: 2, n: 2 }, ratio(1, 2), ratio(1, 3)),
            factor(CartanKind::disc(), rat(1), ratio(1, 5)),
        ],
        2,
    )
}

fn balanced_spec() -> DomainSpec {
    DomainSpec::new(
        vec![factor(CartanKind::ball(3), ratio(1, 5), rat(0))],
        2,
    )
}

fn symbolic_polynomiality(c: &mut Criterion) {
    let spec = product_spec();
    c.bench_function("polynomiality_symbolic_product", |b| {
        b.iter(|| polynomiality_check(black_box(&spec), AlphaMode::Symbolic).unwrap())
    });
}

fn balanced_identity(c: &mut Criterion) {
    let spec = balanced_spec();
    c.bench_function("balanced_check_ball3", |b| {
        b.iter(|| balanced_check(black_box(&spec)).unwrap())
    });
}

fn closed_form(c: &mut Criterion) {
    let spec = DomainSpec::new(
        vec![factor(CartanKind::TypeIV { n: 6 }, rat(1), rat(0))],
        1,
    );
    let alpha = rat(9);
    c.bench_function("epsilon_coeffs_typeIV6", |b| {
        b.iter(|| epsilon_coeffs(black_box(&spec), black_box(&alpha)).unwrap())
    });
}

fn series_summation(c: &mut Criterion) {
    let spec = DomainSpec::new(vec![factor(CartanKind::disc(), rat(1), rat(0))], 1);
    let alpha = rat(5);
    // s close to one is the slow convergence regime.
    let s = ratio(9, 10);
    c.bench_function("epsilon_series_s_nine_tenths", |b| {
        b.iter(|| {
            epsilon_series(
                black_box(&spec),
                black_box(&alpha),
                black_box(&s),
                DEFAULT_MAX_TERMS,
                DEFAULT_SERIES_TOL,
            )
            .unwrap()
        })
    });
}

fn hessian_determinant(c: &mut Criterion) {
    let spec = product_spec();
    let point = sample_point(&spec, &mut substream(5, 0), 0.5).expect("interior point");
    c.bench_function("monge_ampere_check_dim7", |b| {
        b.iter(|| monge_ampere_check(black_box(&spec), black_box(&point), 1e-3).unwrap())
    });
}

criterion_group!(
    benches,
    symbolic_polynomiality,
    balanced_identity,
    closed_form,
    series_summation,
    hessian_determinant
);
criterion_main!(benches);
