use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use motzkin_bench::sample_vector;
use motzkin_core::correlations::{
    excursion_two_point_quadrature, expected_height_exact, sz_profile_exact,
    two_point_height_exact, HeightTable,
};
use motzkin_core::entanglement::cut_entropy;
use motzkin_core::hamiltonian::{build_hamiltonian, LinearOperator, MotzkinOperator};
use motzkin_core::walks::{motzkin_count, motzkin_number};
use motzkin_core::{ChainGeometry, ExcursionPoint, WalkEndpoints};

fn counts(c: &mut Criterion) {
    c.bench_function("motzkin_number 400", |b| b.iter(|| motzkin_number(black_box(400))));
    c.bench_function("motzkin_count 200 to height 20", |b| {
        b.iter(|| motzkin_count(black_box(WalkEndpoints::new(200, 0, 20))))
    });
    c.bench_function("height table 170", |b| b.iter(|| HeightTable::new(black_box(170))));
}

fn observables(c: &mut Criterion) {
    let cut = ChainGeometry::cut(170, 60).unwrap();
    let block = ChainGeometry::centered_block(170, 10).unwrap();
    c.bench_function("expected height 170", |b| b.iter(|| expected_height_exact(black_box(&cut))));
    c.bench_function("sz profile 170", |b| b.iter(|| sz_profile_exact(black_box(170))));
    c.bench_function("cut entropy 170", |b| b.iter(|| cut_entropy(black_box(&cut))));
    c.bench_function("two-point height 170", |b| {
        b.iter(|| two_point_height_exact(black_box(&block)))
    });
    let e = ExcursionPoint::pair(0.3, 0.6, 85).unwrap();
    c.bench_function("excursion double quadrature", |b| {
        b.iter(|| excursion_two_point_quadrature(black_box(&e)))
    });
}

fn operators(c: &mut Criterion) {
    c.bench_function("assemble H 2n=8", |b| b.iter(|| build_hamiltonian(black_box(8))));
    let two_n = 10;
    let sparse = build_hamiltonian(two_n).unwrap();
    let free = MotzkinOperator::new(two_n).unwrap();
    let x = sample_vector(sparse.dim());
    let mut y = vec![0.0; sparse.dim()];
    c.bench_function("sparse matvec 2n=10", |b| b.iter(|| sparse.apply(black_box(&x), &mut y)));
    c.bench_function("matrix-free matvec 2n=10", |b| b.iter(|| free.apply(black_box(&x), &mut y)));
}

criterion_group!(benches, counts, observables, operators);
criterion_main!(benches);
