use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qdw_bench::{godel_pair, l2, separated};
use qdw_core::duality::{dual_object, enumerate_morphisms, enumerate_morphisms_naive, MorphismKind};
use qdw_core::vcat::functor_maps;
use qdw_core::{lukasiewicz, DEFAULT_BUDGET};

fn functors(c: &mut Criterion) {
    let q = l2();
    let x = separated(&q, 4, 7);
    let v = qdw_core::VCat::hom_object(q.clone());
    c.bench_function("functor_maps 4 points -> (L2, hom)", |b| {
        b.iter(|| functor_maps(black_box(&x), &v, DEFAULT_BUDGET).unwrap())
    });
}

fn morphisms(c: &mut Criterion) {
    let x = godel_pair();
    let cx = dual_object(&x, DEFAULT_BUDGET).unwrap();
    let mut g = c.benchmark_group("finsup CX -> V, G3 pair");
    g.bench_function("propagating search", |b| {
        b.iter(|| enumerate_morphisms(black_box(&cx), x.quantale(), MorphismKind::FinSup, DEFAULT_BUDGET).unwrap())
    });
    g.bench_function("naive", |b| {
        b.iter(|| {
            enumerate_morphisms_naive(black_box(&cx), x.quantale(), MorphismKind::FinSup, DEFAULT_BUDGET).unwrap()
        })
    });
    g.finish();
}

fn totally_below(c: &mut Criterion) {
    let q = lukasiewicz(9);
    c.bench_function("totally_below L9", |b| b.iter(|| black_box(&q).totally_below()));
    c.bench_function("totally_below L9 by subsets", |b| {
        b.iter(|| qdw_core::oracle::totally_below_by_subsets(black_box(&q)))
    });
}

criterion_group!(benches, functors, morphisms, totally_below);
criterion_main!(benches);
