use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use evoalg::algebra::{degree_bound_norm_check, k_condition};
use evoalg::graph::{adjacency_rank, twin_partition};
use evoalg::morphism::{decide_isomorphism, DecideOptions};
use evoalg::sampling::{random_sparse_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use evoalg::{AlgebraKind, EvolutionAlgebra};
use evoalg_bench::fixture;

const KINDS: [AlgebraKind; 3] = [
    AlgebraKind::Adjacency,
    AlgebraKind::RandomWalk,
    AlgebraKind::DegreeWeighted,
];

fn products(c: &mut Criterion) {
    let mut group = c.benchmark_group("product");
    for spec in ["cycle:200", "kbipartite:20,30", "sstree:2,3@r=8"] {
        let (g, radius) = fixture(spec);
        let pool = g.window(radius).unwrap().vertices;
        let mut rng = seeded_rng(1);
        let v = random_sparse_vector(&mut rng, &pool, MAX_RANDOM_SUPPORT);
        let w = random_sparse_vector(&mut rng, &pool, MAX_RANDOM_SUPPORT);
        for kind in KINDS {
            let alg = EvolutionAlgebra::new(g.clone(), kind);
            group.bench_with_input(BenchmarkId::new(kind.short_name(), spec), &alg, |b, alg| {
                b.iter(|| alg.product(black_box(&v), black_box(&w)).unwrap())
            });
        }
    }
    group.finish();
}

fn evolution_operator(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_evolution");
    for spec in ["cycle:200", "sstree:2,3@r=8", "factorial@r=4"] {
        let (g, radius) = fixture(spec);
        let pool = g.window(radius).unwrap().vertices;
        let v = random_sparse_vector(&mut seeded_rng(2), &pool, MAX_RANDOM_SUPPORT);
        let alg = EvolutionAlgebra::random_walk(g);
        group.bench_function(spec, |b| b.iter(|| alg.apply_evolution(black_box(&v)).unwrap()));
    }
    group.finish();
}

fn boundedness(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds");
    for spec in ["cycle:500", "sstree:2,3@r=8"] {
        let (g, radius) = fixture(spec);
        let alg = EvolutionAlgebra::degree_weighted(g.clone());
        group.bench_function(BenchmarkId::new("k_condition", spec), |b| {
            b.iter(|| k_condition(&alg, radius).unwrap())
        });
        group.bench_function(BenchmarkId::new("degree_bound", spec), |b| {
            b.iter(|| degree_bound_norm_check(&g, 3, 50, radius, 0).unwrap())
        });
    }
    group.finish();
}

fn exact_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("adjacency_rank");
    group.sample_size(20);
    for spec in ["path:40", "cycle:60", "spider:5,6,7,8"] {
        let (g, _) = fixture(spec);
        let g = g.as_finite().unwrap().clone();
        group.bench_function(spec, |b| b.iter(|| adjacency_rank(black_box(&g)).unwrap()));
    }
    group.finish();
}

fn isomorphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_isomorphism");
    group.sample_size(20);
    for spec in ["cycle:100", "kbipartite:10,15", "path:30", "spider:1,1,2"] {
        let (g, _) = fixture(spec);
        let g = g.as_finite().unwrap().clone();
        let opts = DecideOptions::default();
        group.bench_function(spec, |b| b.iter(|| decide_isomorphism(black_box(&g), &opts).unwrap()));
    }
    let (g, _) = fixture("kbipartite:20,30");
    let g = g.as_finite().unwrap().clone();
    group.bench_function("twin_partition/kbipartite:20,30", |b| {
        b.iter(|| twin_partition(black_box(&g)))
    });
    group.finish();
}

criterion_group!(benches, products, evolution_operator, boundedness, exact_rank, isomorphism);
criterion_main!(benches);
