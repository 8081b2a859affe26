use ball_approx::*;
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

fn bench_forward(c: &mut Criterion) {
    let weights = NetworkWeights::random(3, 6, (10.0, 100.0), 1);
    let x = [0.21, -0.4, 0.05];
    c.bench_function("forward_value d=3 n=6", |b| {
        b.iter(|| forward_value(black_box(&weights), black_box(&x)).unwrap())
    });
    c.bench_function("forward_with_trace d=3 n=6", |b| {
        b.iter(|| forward(black_box(&weights), black_box(&x)).unwrap())
    });
    c.bench_function("locate_region d=3 n=6", |b| {
        b.iter(|| locate_region(black_box(&weights), black_box(&x)).unwrap())
    });
}

fn bench_training_step(c: &mut Criterion) {
    let family = make_directions(2, 8, DirectionScheme::EqualAngle, 0).unwrap();
    let weights = NetworkWeights::from_family(&family, 50.0).unwrap();
    let estimator = GradEstimator::MonteCarlo {
        samples: 4096,
        seed: 7,
    };
    c.bench_function("full_grad_step d=2 n=3 4k samples", |b| {
        b.iter(|| full_grad_step(black_box(&weights), 0.01, &estimator, 0).unwrap())
    });
    c.bench_function("radial_step x 1e4", |b| {
        b.iter(|| {
            let mut m = 100.0f64;
            for _ in 0..10_000 {
                m = radial_step(m, 1.0);
            }
            m
        })
    });
}

fn bench_measures(c: &mut Criterion) {
    let family = make_directions(2, 8, DirectionScheme::EqualAngle, 0).unwrap();
    let mags = vec![200.0; 8];
    c.bench_function("facet_measure 20k samples", |b| {
        b.iter(|| facet_measure(black_box(&family), 1, &mags, -0.002, 20_000, 3).unwrap())
    });
    c.bench_function("excess_volume 20k samples", |b| {
        b.iter(|| excess_volume(black_box(&family), 20_000, 3).unwrap())
    });
}

fn bench_fourier(c: &mut Criterion) {
    c.bench_function("shell_counts d=3 M=1e5", |b| {
        b.iter_batched(
            || (),
            |_| shell_counts(3, 100_000).unwrap(),
            BatchSize::LargeInput,
        )
    });
    c.bench_function("four_square sieve M=1e6", |b| {
        b.iter_batched(
            || (),
            |_| fourier::four_square_counts(1_000_000),
            BatchSize::LargeInput,
        )
    });
    c.bench_function("partial_sum_at d=3 N=20", |b| {
        b.iter(|| partial_sum_at(3, 20, black_box(&[0.25, 0.0, -0.5])).unwrap())
    });
    c.bench_function("ball_coefficient d=5 kappa=20", |b| {
        b.iter(|| ball_coefficient(5, black_box(20.0)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_forward,
    bench_training_step,
    bench_measures,
    bench_fourier
);
criterion_main!(benches);
