use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use domcomplex::complex::streaming_f_vector;
use domcomplex::graph::{domination_at_least, domination_number};
use domcomplex::homology::{boundary_matrix, rank_gf2, rank_rational};
use domcomplex::morse::{build_dnn2, verify_acyclic};
use domcomplex::{CellTable, ComplexSpec, LabeledGraph, VertexCount, DEFAULT_CELL_BUDGET};

fn random_graphs(n: u8, count: usize, seed: u64) -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vc = VertexCount::new(n).unwrap();
    let bits = vc.edge_count();
    (0..count)
        .map(|_| {
            let mask = rng.gen::<u128>() & ((1u128 << bits) - 1);
            LabeledGraph::from_mask(vc, mask).unwrap()
        })
        .collect()
}

fn bench_domination(c: &mut Criterion) {
    let graphs = random_graphs(8, 512, 42);
    let mut group = c.benchmark_group("domination");
    group.bench_function("at_least_k6_n8_x512", |b| {
        b.iter(|| {
            graphs
                .iter()
                .filter(|g| domination_at_least(black_box(g), 6))
                .count()
        })
    });
    group.bench_function("gamma_n8_x512", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| domination_number(black_box(g)))
                .sum::<usize>()
        })
    });
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (n, k) in [(6u8, 4u8), (6, 3), (8, 6)] {
        let spec = ComplexSpec::new(VertexCount::new(n).unwrap(), k).unwrap();
        group.bench_with_input(
            BenchmarkId::new("streaming_f_vector", format!("D_{n}_{k}")),
            &spec,
            |b, spec| b.iter(|| streaming_f_vector(black_box(*spec))),
        );
    }
    group.finish();
}

fn bench_morse(c: &mut Criterion) {
    let n = VertexCount::new(6).unwrap();
    let mut group = c.benchmark_group("morse");
    group.bench_function("build_dnn2_n6", |b| {
        b.iter(|| build_dnn2(black_box(n), DEFAULT_CELL_BUDGET).unwrap())
    });
    let dnn2 = build_dnn2(n, DEFAULT_CELL_BUDGET).unwrap();
    group.bench_function("verify_acyclic_n6", |b| {
        b.iter(|| verify_acyclic(black_box(&dnn2.matching)))
    });
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let spec = ComplexSpec::new(VertexCount::new(6).unwrap(), 3).unwrap();
    let table = CellTable::enumerate(spec).unwrap();
    let mid = boundary_matrix(&table, 4).unwrap();
    let small = boundary_matrix(&table, 2).unwrap();
    let mut group = c.benchmark_group("rank");
    group.sample_size(20);
    group.bench_function("gf2_d4_of_D63", |b| b.iter(|| rank_gf2(black_box(&mid))));
    group.bench_function("rational_d2_of_D63", |b| {
        b.iter(|| rank_rational(black_box(&small)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_domination,
    bench_enumeration,
    bench_morse,
    bench_rank
);
criterion_main!(benches);
