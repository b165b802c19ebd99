use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use thermineq_core::numerics::{integrate, integrate_kfold_tensor, kfold_identical, separable_integrand};
use thermineq_core::theorems::{powermean_verify, solve_equilibrium, verify_reversible};
use thermineq_core::{parse_function, BlockSystem, ScalarFunction, Tolerances};

fn quadrature(c: &mut Criterion) {
    let smooth = parse_function("2 + x/100 + exp(-x/50)", None).unwrap();
    let step = ScalarFunction::parse_piecewise(&[(250.0, "1"), (350.0, "2"), (420.0, "1.5")], 500.0).unwrap();
    c.bench_function("integrate smooth 1e-10", |b| b.iter(|| integrate(&smooth, black_box(300.0), 450.0, 1e-10)));
    c.bench_function("integrate step 1e-10", |b| b.iter(|| integrate(&step, black_box(260.0), 480.0, 1e-10)));
}

fn kfold(c: &mut Criterion) {
    let f = parse_function("1 + x^2", None).unwrap();
    let g = parse_function("x", None).unwrap();
    c.bench_function("kfold separable k=5", |b| {
        b.iter(|| kfold_identical(&f, Some(&g), black_box(1.0), 3.0, 5, 1e-10))
    });
    let fs = vec![f.clone(); 3];
    let gs = vec![g.clone(); 3];
    c.bench_function("kfold tensor k=3", |b| {
        b.iter(|| integrate_kfold_tensor(separable_integrand(&fs, &gs), black_box(1.0), 3.0, 3))
    });
}

fn theorems(c: &mut Criterion) {
    let tol = Tolerances::default();
    let sys = BlockSystem::shared(vec![280.0, 300.0, 340.0, 390.0, 410.0], parse_function("1 + x/300", None).unwrap())
        .unwrap();
    let g = ScalarFunction::identity();
    c.bench_function("solve equilibrium n=5 k=1", |b| b.iter(|| solve_equilibrium(black_box(&sys), &g, 1, &tol)));
    c.bench_function("verify reversible n=5 k=3", |b| b.iter(|| verify_reversible(black_box(&sys), &g, 3, &tol)));
    let xs = [1.0, 2.0, 9.0];
    c.bench_function("power mean k=3", |b| b.iter(|| powermean_verify(black_box(&xs), 2.0, 1.0, 3, &tol)));
}

criterion_group!(benches, quadrature, kfold, theorems);
criterion_main!(benches);
