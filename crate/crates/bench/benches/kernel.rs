use criterion::{criterion_group, criterion_main, Criterion};

use cubical_bench::nerve;
use cubical_core::equivalence::{check_eta, fc};
use cubical_core::laws::check_all;
use cubical_core::normalizer::{check_confluence, default_rules, normalize};
use cubical_core::{BaseKind, StructuralWord};

fn laws(c: &mut Criterion) {
    let s2 = nerve(BaseKind::PairGroupoid, 2);
    let s3 = nerve(BaseKind::PairGroupoid, 3);
    c.bench_function("check_all groupoid n=2", |b| b.iter(|| check_all(&s2)));
    c.bench_function("check_all groupoid n=3", |b| b.iter(|| check_all(&s3)));
}

fn equivalence(c: &mut Criterion) {
    let s = nerve(BaseKind::PairGroupoid, 3);
    c.bench_function("fc groupoid n=3", |b| b.iter(|| fc(&s).unwrap()));
    let (cl, _) = fc(&s).unwrap();
    c.bench_function("check_eta groupoid n=3", |b| b.iter(|| check_eta(&cl)));
}

fn rewriting(c: &mut Criterion) {
    let w: StructuralWord = "d1- d2+ g1+ e2 e1".parse().unwrap();
    c.bench_function("normalize length 5", |b| b.iter(|| normalize(&w, 2).unwrap()));
    let rules = default_rules();
    let mut g = c.benchmark_group("confluence");
    g.sample_size(10);
    g.bench_function("length 3 level 2", |b| b.iter(|| check_confluence(&rules, 3, 2)));
    g.finish();
}

criterion_group!(benches, laws, equivalence, rewriting);
criterion_main!(benches);
