use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use waring_bench::{instance, prescribe_case};
use waring_core::constructions::prescribe_diagonal;
use waring_core::{decompose, select_prime};

fn bench_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(20);
    for n in [2usize, 4, 8, 12] {
        let inst = instance(n, 42);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| decompose(black_box(&inst.t), &inst.spec, &inst.coeffs).expect("valid instance"))
        });
    }
    group.finish();
}

fn bench_prescribe(c: &mut Criterion) {
    let mut group = c.benchmark_group("prescribe_diagonal");
    for k in [3usize, 6, 10] {
        let (b, mus) = prescribe_case(k, 7);
        group.bench_with_input(BenchmarkId::from_parameter(k), &(b, mus), |bench, (b, mus)| {
            bench.iter(|| prescribe_diagonal(black_box(b), mus).expect("valid case"))
        });
    }
    group.finish();
}

fn bench_select_prime(c: &mut Criterion) {
    c.bench_function("select_prime/2..10000", |b| {
        b.iter(|| {
            (2..10_000usize)
                .map(|n| select_prime(black_box(n)).expect("n >= 2").p)
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, bench_decompose, bench_prescribe, bench_select_prime);
criterion_main!(benches);
