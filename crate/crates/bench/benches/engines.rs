use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rankwl_core::canon::canonise;
use rankwl_core::decomposition::rank_width_exact;
use rankwl_core::f2::{cut_matrix, rank_f2};
use rankwl_core::generate::{cycle, petersen, random_graph, random_tree, stream_rng};
use rankwl_core::graph::VertexSet;
use rankwl_core::pebble::spoiler_wins;
use rankwl_core::wl::wl_stable_k;

fn f2_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_f2");
    for n in [16, 64, 200] {
        let g = random_graph(&mut stream_rng(1, n as u64), n, 0.5);
        let x = VertexSet::new(0..n / 2);
        let m = cut_matrix(&g, &x).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rank_f2(black_box(m))));
    }
    group.finish();
}

fn wl(c: &mut Criterion) {
    let mut group = c.benchmark_group("wl_stable_k");
    let g = petersen();
    for k in 1..=3 {
        group.bench_with_input(BenchmarkId::new("petersen", k), &k, |b, &k| {
            b.iter(|| wl_stable_k(black_box(&g), k).unwrap())
        });
    }
    let big = random_graph(&mut stream_rng(2, 0), 40, 0.3);
    group.bench_function("random-40/k=2", |b| b.iter(|| wl_stable_k(black_box(&big), 2).unwrap()));
    group.finish();
}

fn canonisation(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonise");
    group.sample_size(20);
    let tree = random_tree(&mut stream_rng(3, 0), 10);
    group.bench_function("tree-10/dim=2", |b| b.iter(|| canonise(black_box(&tree), 2).unwrap()));
    let c8 = cycle(8);
    group.bench_function("cycle-8/dim=2", |b| b.iter(|| canonise(black_box(&c8), 2).unwrap()));
    group.finish();
}

fn rank_width(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_width_exact");
    group.sample_size(10);
    for n in [8, 10, 12] {
        let g = random_graph(&mut stream_rng(4, n as u64), n, 0.5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| rank_width_exact(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn pebble_game(c: &mut Criterion) {
    let mut group = c.benchmark_group("spoiler_wins");
    group.sample_size(10);
    let (c6, triangles) = (cycle(6), cycle(3).disjoint_union(&cycle(3)));
    for pebbles in 2..=3 {
        group.bench_with_input(BenchmarkId::new("c6-vs-2c3", pebbles), &pebbles, |b, &p| {
            b.iter(|| spoiler_wins(black_box(&c6), black_box(&triangles), p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, f2_rank, wl, canonisation, rank_width, pebble_game);
criterion_main!(benches);
