//! Benchmarks for the data-parallel hot paths. Run `cargo bench` for the
//! parallel build and `cargo bench --no-default-features` for the
//! sequential fallback to compare.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use finsler_rellich::constants::{mu_m, sweep_family, Family};
use finsler_rellich::finsler::{build_norm_table, DirectionGrid};
use finsler_rellich::geometry::{ConvexPolytope, Domain};
use finsler_rellich::polynomial::rat;
use finsler_rellich::verify::{weighted_mass, TestFunction};

fn bench_norm_table(c: &mut Criterion) {
    let symbol = Family::Example1.symbol(5.0).unwrap();
    c.bench_function("build_norm_table_1024", |b| {
        b.iter(|| {
            let grid = DirectionGrid::new(1024, 1e-6).unwrap();
            build_norm_table(black_box(&symbol), &grid).unwrap()
        })
    });
}

fn bench_mu_m(c: &mut Criterion) {
    let symbol = Family::Example1.symbol(5.0).unwrap();
    let table = build_norm_table(&symbol, &DirectionGrid::new(1024, 1e-6).unwrap()).unwrap();
    c.bench_function("mu_m_beta5", |b| {
        b.iter(|| mu_m(black_box(&symbol), &table, 1e-8).unwrap())
    });
}

fn bench_weighted_mass(c: &mut Criterion) {
    let symbol = Family::Example1.symbol(5.0).unwrap();
    let table = build_norm_table(&symbol, &DirectionGrid::new(256, 1e-6).unwrap()).unwrap();
    let bounds = vec![(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(1, 1))];
    let u = TestFunction::canonical_bump(bounds, 2).unwrap();
    let domain = Domain::Polytope(ConvexPolytope::unit_square());
    c.bench_function("weighted_mass_unit_square", |b| {
        b.iter(|| weighted_mass(black_box(&symbol), &table, &domain, &u, 1e-6).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let betas: Vec<f64> = (0..8).map(|k| 0.5 + k as f64).collect();
    let grid = DirectionGrid::new(512, 1e-5).unwrap();
    c.bench_function("sweep_8_betas", |b| {
        b.iter(|| sweep_family(&Family::Example1, black_box(&betas), &grid))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_norm_table, bench_mu_m, bench_weighted_mass, bench_sweep
}
criterion_main!(benches);
