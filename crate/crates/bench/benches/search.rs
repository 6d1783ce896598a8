use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rainbow_core::algebra::{singer_difference_set, PrimePower};
use rainbow_core::constructions::block_blocker;
use rainbow_core::decide::brute_force_verdicts;
use rainbow_core::{decide_arrow, find_rainbow_either, RainbowQuery, SearchConfig};

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    for (m, n, a, b) in [(3, 6, 2, 3), (3, 7, 3, 3), (4, 6, 3, 3)] {
        let id = format!("K_{m},{n} vs K_{a},{b}");
        group.bench_function(BenchmarkId::new("symmetry", &id), |bench| {
            bench.iter(|| decide_arrow(m, n, a, b, &SearchConfig::default()).unwrap())
        });
        let plain = SearchConfig::default().with_column_symmetry_pruning(false);
        group.bench_function(BenchmarkId::new("plain", &id), |bench| {
            bench.iter(|| decide_arrow(m, n, a, b, &plain).unwrap())
        });
    }
    group.bench_function("brute force 3x4", |bench| bench.iter(|| brute_force_verdicts(3, 4)));
    group.finish();
}

fn singer(c: &mut Criterion) {
    let mut group = c.benchmark_group("singer_difference_set");
    for q in [4u64, 9, 16, 27] {
        let pp = PrimePower::new(q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &pp, |bench, &pp| {
            bench.iter(|| singer_difference_set(black_box(pp)).unwrap())
        });
    }
    group.finish();
}

fn rainbow_scan(c: &mut Criterion) {
    let rect = block_blocker(3, 4).unwrap();
    let q = RainbowQuery::new(3, 4).unwrap();
    c.bench_function("find_rainbow_either block(3,4)", |bench| {
        bench.iter(|| find_rainbow_either(black_box(&rect), q))
    });
}

criterion_group!(benches, decide, singer, rainbow_scan);
criterion_main!(benches);
