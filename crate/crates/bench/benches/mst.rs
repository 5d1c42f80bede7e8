use core::time::Duration;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use combinf_bench::{correlation_network, modular_data};
use combinf_core::simulation::{permutation_test, run_combinatorial_trial, PermutationOptions};
use combinf_core::{mst_from_connectivity, RngStream, WeightMode};

fn bench_mst(c: &mut Criterion) {
    let c40 = correlation_network(10, 40, 4, 1);
    let c116 = correlation_network(20, 116, 4, 2);
    c.bench_function("mst_one_minus_p40", |b| {
        b.iter(|| mst_from_connectivity(black_box(&c40), WeightMode::OneMinus).unwrap())
    });
    c.bench_function("mst_one_minus_p116", |b| {
        b.iter(|| mst_from_connectivity(black_box(&c116), WeightMode::OneMinus).unwrap())
    });
}

fn bench_trials(c: &mut Criterion) {
    let a = modular_data(10, 40, 4, 3);
    let b = modular_data(10, 40, 5, 4);
    c.bench_function("combinatorial_trial_4v5", |bch| {
        bch.iter(|| run_combinatorial_trial(black_box(&a), black_box(&b), WeightMode::Distance).unwrap())
    });
    c.bench_function("permutation_test_184_4v5", |bch| {
        bch.iter(|| {
            permutation_test(&a, &b, 184, &RngStream::new(5, 0), PermutationOptions::default()).unwrap()
        })
    });
}

criterion_group! {
    name = mst;
    config = Criterion::default().sample_size(20).measurement_time(Duration::new(10, 0));
    targets = bench_mst, bench_trials
}
criterion_main!(mst);
