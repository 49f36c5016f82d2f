use criterion::{black_box, criterion_group, criterion_main, Criterion};
use pmgraph::crystals::{kr_column_graph, su2_graph};
use pmgraph::expansion::expand;
use pmgraph::linalg::minimal_polynomial;
use pmgraph::pm::structure_constants;
use pmgraph::{compute_basis, WeightedDigraph};

const KSCHUR3: &str = include_str!("../../cli/tests/data/kschur3.json");

fn kschur3() -> WeightedDigraph {
    WeightedDigraph::from_json(KSCHUR3).unwrap()
}

fn basis(c: &mut Criterion) {
    let g = kschur3();
    c.bench_function("compute_basis kschur3", |b| b.iter(|| compute_basis(black_box(&g), 0).unwrap()));
    let a25 = kr_column_graph(2, 5).unwrap();
    c.bench_function("compute_basis B^a(2,5)", |b| b.iter(|| compute_basis(black_box(&a25), 0).unwrap()));
    let basis = compute_basis(&a25, 0).unwrap();
    c.bench_function("structure_constants B^a(2,5)", |b| {
        b.iter(|| structure_constants(black_box(&basis)).unwrap())
    });
}

fn minpoly(c: &mut Criterion) {
    let a = kschur3().adjacency_matrix();
    c.bench_function("minimal_polynomial kschur3", |b| b.iter(|| minimal_polynomial(black_box(&a)).unwrap()));
    let a = kr_column_graph(2, 6).unwrap().adjacency_matrix();
    c.bench_function("minimal_polynomial B^a(2,6)", |b| b.iter(|| minimal_polynomial(black_box(&a)).unwrap()));
}

fn expansion(c: &mut Criterion) {
    let g = su2_graph(6).unwrap();
    c.bench_function("expand su2(6) depth 8", |b| b.iter(|| expand(black_box(&g), 8).unwrap()));
}

criterion_group!(benches, basis, minpoly, expansion);
criterion_main!(benches);
