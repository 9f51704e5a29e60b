use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sgs_core::entropy::DEFAULT_TOL;
use sgs_core::sample::random_graph_with;
use sgs_core::{
    build_s_gap, entropy, realize_entropy, zeta_coeffs, EntropyMethod, Oracle, OracleOptions,
};
use std::hint::black_box;

fn entropy_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("entropy");
    let g = random_graph_with(7, 5);
    for (name, m) in [
        ("spectral", EntropyMethod::Spectral),
        ("det", EntropyMethod::Det),
        ("cycles", EntropyMethod::Cycles),
    ] {
        group.bench_with_input(BenchmarkId::new(name, 5), &g, |b, g| {
            b.iter(|| entropy(black_box(g), m, DEFAULT_TOL))
        });
    }
    group.finish();
}

fn zeta(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta");
    let g = build_s_gap(&"N".parse().unwrap()).unwrap();
    for order in [16, 32, 64] {
        group.bench_with_input(BenchmarkId::new("golden", order), &order, |b, &n| {
            b.iter(|| zeta_coeffs(&g, n))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    let o = Oracle::new(
        &build_s_gap(&"0+2k".parse().unwrap()).unwrap(),
        OracleOptions::default(),
    )
    .unwrap();
    for n in [10, 16] {
        group.bench_with_input(BenchmarkId::new("count_words", n), &n, |b, &n| {
            b.iter(|| o.count_words(n))
        });
        group.bench_with_input(BenchmarkId::new("count_periodic", n), &n, |b, &n| {
            b.iter(|| o.count_periodic(n))
        });
    }
    group.bench_function("enum_words/12", |b| b.iter(|| o.enum_words(12)));
    group.finish();
}

fn construct(c: &mut Criterion) {
    c.bench_function("realize_entropy/2+sqrt3", |b| {
        b.iter(|| realize_entropy(black_box(2.0 + 3f64.sqrt())))
    });
}

criterion_group!(benches, entropy_methods, zeta, oracle, construct);
criterion_main!(benches);
