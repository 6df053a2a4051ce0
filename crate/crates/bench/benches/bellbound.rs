use std::hint::black_box;

use bellbound::bounds::{ascent_from, local_max, OptimizerConfig};
use bellbound::linalg::hermitian_eigen;
use bellbound::simulator::{run_lhv, run_quantum, AngleSettings, LhvModel};
use bellbound_bench::{hermitian, nonlocal_start};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigen");
    for dim in [4, 8, 16] {
        let m = hermitian(dim, 1);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| hermitian_eigen(black_box(m)))
        });
    }
    group.finish();
}

fn optimizers(c: &mut Criterion) {
    let local = OptimizerConfig::local();
    c.bench_function("local_max dim 2, 8 restarts", |b| {
        b.iter(|| local_max(black_box(&local)))
    });
    let nonlocal = OptimizerConfig::nonlocal();
    let start = nonlocal_start(&nonlocal, 42);
    c.bench_function("nonlocal single restart dim 2", |b| {
        b.iter(|| ascent_from(black_box(start.clone()), &nonlocal))
    });
}

fn simulator(c: &mut Criterion) {
    let s = AngleSettings::optimal_chsh();
    let mut group = c.benchmark_group("simulate 100k shots");
    group.sample_size(20);
    group.bench_function("quantum", |b| b.iter(|| run_quantum(&s, 100_000, black_box(7))));
    group.bench_function("malus", |b| {
        b.iter(|| run_lhv(&LhvModel::malus(), &s, 100_000, black_box(7)))
    });
    group.finish();
}

criterion_group!(benches, eigen, optimizers, simulator);
criterion_main!(benches);
