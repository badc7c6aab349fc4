use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ncwave_bench::{damped_params, harmonic, packet_1d, packet_3d};
use ncwave_core::pathintegral::{kernel_moment_quadrature, ShortTimePropagator};
use ncwave_core::solver::{CrankNicolson, SplitStepper};

fn split_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("split_step");
    for n in [256usize, 1024, 4096] {
        let psi = packet_1d(n);
        let stepper = SplitStepper::new(psi.grid(), &harmonic(), &damped_params(1), 1e-2).unwrap();
        let mut amps = psi.amplitudes().to_vec();
        group.bench_with_input(BenchmarkId::new("1d", n), &n, |b, _| {
            b.iter(|| stepper.step_in_place(black_box(&mut amps)))
        });
    }
    let psi = packet_3d(32);
    let stepper = SplitStepper::new(psi.grid(), &harmonic(), &damped_params(3), 1e-2).unwrap();
    let mut amps = psi.amplitudes().to_vec();
    group.bench_function("3d/32", |b| b.iter(|| stepper.step_in_place(black_box(&mut amps))));
    group.finish();
}

fn crank_nicolson(c: &mut Criterion) {
    let mut group = c.benchmark_group("crank_nicolson");
    for n in [256usize, 1024, 4096] {
        let psi = packet_1d(n);
        let stepper = CrankNicolson::new(psi.grid(), &harmonic(), &damped_params(1), 1e-2).unwrap();
        let mut amps = psi.amplitudes().to_vec();
        group.bench_with_input(BenchmarkId::new("1d", n), &n, |b, _| {
            b.iter(|| stepper.step_in_place(black_box(&mut amps)))
        });
    }
    group.finish();
}

fn short_time(c: &mut Criterion) {
    let mut group = c.benchmark_group("short_time");
    for n in [256usize, 1024, 4096] {
        let psi = packet_1d(n);
        let propagator = ShortTimePropagator::new(psi.grid(), &harmonic(), &damped_params(1), 1e-2).unwrap();
        group.bench_with_input(BenchmarkId::new("1d", n), &n, |b, _| b.iter(|| propagator.step(black_box(&psi))));
    }
    group.finish();
}

fn moment_quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("moment_quadrature");
    let physics = damped_params(1);
    for order in [0u32, 2, 4] {
        group.bench_with_input(BenchmarkId::new("order", order), &order, |b, &order| {
            b.iter(|| kernel_moment_quadrature(order, black_box(1e-2), &physics, 1e-2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, split_step, crank_nicolson, short_time, moment_quadrature);
criterion_main!(benches);
