//! Compares the parallel and sequential filtering paths on a noisy profile.
//!
//! Run with `cargo bench -p siac`. Building with `--no-default-features`
//! makes `filter_grid` itself sequential; the explicit `seq` benchmark is the
//! reference either way.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use siac::{
    build_mesh, filter_grid, filter_grid_seq, lagrange_interpolant, BoundaryMode, KernelSet,
    KernelSpec, PiecewiseInterpolant, PointwiseData, Scaling,
};

fn noisy_profile(n: usize) -> PointwiseData {
    let dx = 1.0 / n as f64;
    let xs: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * dx).collect();
    // Deterministic pseudo-noise; no RNG needed for a benchmark fixture.
    let fs: Vec<f64> = xs
        .iter()
        .map(|&x| {
            (2.0 * std::f64::consts::PI * x).sin() + 0.1 * (113.0 * x).sin() * (57.0 * x).cos()
        })
        .collect();
    PointwiseData::new(0.0, 1.0, xs, fs).unwrap()
}

fn setup(n: usize) -> (PiecewiseInterpolant, KernelSet, Vec<f64>) {
    let data = noisy_profile(n);
    let mesh = build_mesh(&data, 1).unwrap();
    let interp = lagrange_interpolant(&data, &mesh, 0, 0, false).unwrap();
    let spec = KernelSpec::new(
        2,
        2,
        Scaling::Adaptive {
            h_int: 32.0 / n as f64,
            h_grid: 1.0 / n as f64,
        },
        true,
        (0.0, 1.0),
        BoundaryMode::PositionDependent,
    )
    .unwrap();
    let xs = data.xs().to_vec();
    (interp, KernelSet::new(spec), xs)
}

fn bench_filter_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("filter_grid");
    for n in [512usize, 2048] {
        let (interp, kernels, xs) = setup(n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| filter_grid(black_box(&interp), &kernels, black_box(&xs)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, _| {
            b.iter(|| filter_grid_seq(black_box(&interp), &kernels, black_box(&xs)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_filter_grid);
criterion_main!(benches);
