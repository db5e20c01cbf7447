use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigUint;

use symred_core::atlas::{Atlas, Out4Bounds};
use symred_core::diagonal::diagonal_scan;
use symred_core::product::{enumerate_product_cases, m4_special_case, RadicalPattern};

fn out4(c: &mut Criterion) {
    let bounds = Out4Bounds::new(12, 1024, true);
    c.bench_function("out4_scan n12 q1024", |b| {
        b.iter(|| Atlas::embedded().out4_scan(black_box(&bounds)).unwrap())
    });
}

fn diagonal(c: &mut Criterion) {
    let bound = BigUint::from(10_000_000u32);
    c.bench_function("diagonal_scan 1e7", |b| {
        b.iter(|| diagonal_scan(Atlas::embedded(), black_box(&bound)))
    });
}

fn product(c: &mut Criterion) {
    c.bench_function("enumerate_product_cases", |b| {
        b.iter(|| enumerate_product_cases(black_box(2)).unwrap())
    });
    c.bench_function("m4_special_case 6", |b| {
        b.iter(|| m4_special_case(black_box(6)).unwrap())
    });
    let mut group = c.benchmark_group("radical_bound");
    group.sample_size(10);
    group.bench_function("pattern m2..10 v0 5..1e4", |b| {
        b.iter(|| RadicalPattern::compute(2..=10, 5, black_box(10_000)))
    });
    group.finish();
}

criterion_group!(benches, out4, diagonal, product);
criterion_main!(benches);
