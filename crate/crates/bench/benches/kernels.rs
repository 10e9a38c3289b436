use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use homkit::dgca::check_dgca;
use homkit::exactmath::frac;
use homkit::homlie::check_hom_lie;
use homkit::homlie2::{check_homlie2, from_omni, SweepMode};
use homkit::omni::check_omni_axioms;
use homkit::rep::{check_ds_properties, cohomology_dim};
use homkit::{Matrix, Rational};
use homkit_bench::{adjoint_sl2, omni_space, sl2};

fn rational(c: &mut Criterion) {
    let small: Vec<Rational> = (1..200).map(|i| frac(i % 7 - 3, 4)).collect();
    c.bench_function("rational_sum_fast_path", |b| {
        b.iter(|| small.iter().fold(Rational::from(0), |acc, x| &acc + x))
    });
    // Denominators grow past i64 quickly here.
    let xs: Vec<Rational> = (1..200).map(|i| frac(i, 2 * i + 1)).collect();
    c.bench_function("rational_sum_spill", |b| {
        b.iter(|| xs.iter().fold(Rational::from(0), |acc, x| &acc + x))
    });
    c.bench_function("rational_product_spill", |b| {
        b.iter(|| xs.iter().fold(Rational::from(1), |acc, x| &acc * &(x + &Rational::from(1))))
    });
    let m = Matrix::from_fn(8, 8, |i, j| frac((i * 3 + j * 7) as i64 % 11 - 5, (i + j) as i64 + 1));
    c.bench_function("rref_8x8", |b| b.iter(|| black_box(&m).rank()));
}

fn algebra(c: &mut Criterion) {
    let g = sl2();
    c.bench_function("check_hom_lie_sl2", |b| b.iter(|| check_hom_lie(black_box(&g))));
    c.bench_function("check_dgca_sl2", |b| b.iter(|| check_dgca(black_box(&g))));
    let r = adjoint_sl2();
    c.bench_function("ds_properties_sl2_adjoint", |b| b.iter(|| check_ds_properties(black_box(&r), 2, 2).unwrap()));
    c.bench_function("cohomology_sl2_adjoint_k2", |b| b.iter(|| cohomology_dim(black_box(&r), 0, 2).unwrap()));
}

fn omni(c: &mut Criterion) {
    let mut group = c.benchmark_group("omni_axioms");
    for m in 1..=3 {
        let s = omni_space(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &s, |b, s| b.iter(|| check_omni_axioms(s, 1, 20, 0)));
    }
    group.finish();
    let mut group = c.benchmark_group("homlie2_exhaustive");
    group.sample_size(10);
    for m in 1..=3 {
        let d = from_omni(&omni_space(m));
        group.bench_with_input(BenchmarkId::from_parameter(m), &d, |b, d| b.iter(|| check_homlie2(d, SweepMode::Exhaustive)));
    }
    group.finish();
}

criterion_group!(benches, rational, algebra, omni);
criterion_main!(benches);
