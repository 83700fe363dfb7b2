use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use infologic::canonical::{canonicalize, join, meet};
use infologic::fusion::{fuse, garbling_dominates, verify_guarantee};
use infologic::gen::{self, seeded};
use infologic::{InfoSystem, ScoreRule};

fn pair(n: usize, seed: u64) -> (InfoSystem, InfoSystem) {
    let mut rng = seeded(seed);
    let prior = gen::prior(&mut rng, 2, 0.05);
    (
        gen::system_with_prior(&mut rng, &prior, n),
        gen::system_with_prior(&mut rng, &prior, n),
    )
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonicalize");
    for n in [4, 16, 64, 256] {
        let (p, _) = pair(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| canonicalize(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for n in [4, 16, 64] {
        let (p, q) = pair(n, 2);
        let (a, b) = (canonicalize(&p).unwrap(), canonicalize(&q).unwrap());
        group.bench_with_input(BenchmarkId::new("join", n), &(&a, &b), |bench, (a, b)| {
            bench.iter(|| join(black_box(a), black_box(b)))
        });
        group.bench_with_input(BenchmarkId::new("meet", n), &(&a, &b), |bench, (a, b)| {
            bench.iter(|| meet(black_box(a), black_box(b)))
        });
    }
    group.finish();
}

fn fusion(c: &mut Criterion) {
    let mut group = c.benchmark_group("fusion");
    for n in [4, 8] {
        let (p, q) = pair(n, 3);
        group.bench_with_input(BenchmarkId::new("fuse", n), &(&p, &q), |b, (p, q)| {
            b.iter(|| fuse(black_box(p), black_box(q)).unwrap())
        });
    }
    let (p, q) = pair(6, 4);
    let scores = [ScoreRule::Logarithmic, ScoreRule::Quadratic];
    group.bench_function("verify_50_couplings", |b| {
        b.iter(|| verify_guarantee(black_box(&p), black_box(&q), &scores, 50, 0).unwrap())
    });
    group.finish();
}

fn garbling(c: &mut Criterion) {
    let mut group = c.benchmark_group("garbling");
    for n in [4, 8, 16] {
        let mut rng = seeded(5);
        let (p, _) = pair(n, 5);
        let q = gen::garbling(&mut rng, &p, n / 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(&p, &q), |b, (p, q)| {
            b.iter(|| garbling_dominates(black_box(p), black_box(q)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, canonical, lattice, fusion, garbling);
criterion_main!(benches);
