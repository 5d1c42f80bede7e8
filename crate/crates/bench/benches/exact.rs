use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use combinf_core::exact::{band_path_count, count_band_paths, exact_pvalue};

fn bench_pvalue(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_pvalue");
    for &(q, d) in &[(39, 10), (115, 46), (500, 60)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_d{d}")), &(q, d), |b, &(q, d)| {
            b.iter(|| exact_pvalue(black_box(q), black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn bench_tables(c: &mut Criterion) {
    c.bench_function("band_path_count_two_rows_q115", |b| {
        b.iter(|| band_path_count(black_box(115), black_box(46)).unwrap())
    });
    c.bench_function("count_band_paths_full_table_q115", |b| {
        b.iter(|| count_band_paths(black_box(115), black_box(46)).unwrap())
    });
}

criterion_group!(benches, bench_pvalue, bench_tables);
criterion_main!(benches);
