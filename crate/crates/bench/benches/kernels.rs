use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kzb_core::exactcore::bernoulli_h_identity;
use kzb_core::freelie::checks::nq_annihilation_check;
use kzb_core::freelie::{nq, LyndonBasis};
use kzb_core::kzbform::{assemble_kzb, flatness_check, heat_check};
use kzb_core::modforms::p2m_table;
use kzb_core::numeric::{associator, fiber_transport, FiberLoop};
use num_complex::Complex64;

fn exact(c: &mut Criterion) {
    c.bench_function("lyndon_basis_12", |b| b.iter(|| LyndonBasis::new(black_box(12))));
    c.bench_function("nq_14", |b| b.iter(|| nq(black_box(14))));
    c.bench_function("nq_annihilation_14", |b| b.iter(|| nq_annihilation_check(black_box(14), false)));
    c.bench_function("bernoulli_identity_20", |b| b.iter(|| bernoulli_h_identity(black_box(20))));
    c.bench_function("p2m_table_24", |b| b.iter(|| p2m_table(black_box(24))));
    c.bench_function("heat_8_8_12", |b| b.iter(|| heat_check(8, 8, black_box(12))));
    c.bench_function("flatness_8_8_10", |b| {
        b.iter(|| flatness_check(&assemble_kzb(black_box(8), 8, 10).unwrap()))
    });
}

fn numeric(c: &mut Criterion) {
    c.bench_function("associator_3_1024", |b| b.iter(|| associator(black_box(3), 1024).unwrap()));
    let tau = Complex64::new(0.0, 2.0);
    let x = Complex64::new(0.3, 0.5);
    c.bench_function("fiber_beta_4_256", |b| {
        b.iter(|| fiber_transport(tau, x, FiberLoop::Beta, black_box(4), 256).unwrap())
    });
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
