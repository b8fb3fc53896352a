use criterion::{criterion_group, criterion_main, Criterion};

use kleeneprob::dmf::ds_algebra;
use kleeneprob::formula::{parse, LogicKind};
use kleeneprob::logic::meaning_kleene;
use kleeneprob::partial_set::{associated_partial_space, enumerate_ds};
use kleeneprob::partial_valuation::{
    conditional_partial_valuation, is_partial_valuation, measure_as_valuation, weak_bayes,
};
use kleeneprob::rational::rat;

fn names(k: usize) -> Vec<String> {
    ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
}

fn bench_algebra_build(c: &mut Criterion) {
    let space = names(3);
    let field = enumerate_ds(&space, 6).unwrap();
    c.bench_function("ds_algebra D(S) |S|=3 (27 elements)", |b| {
        b.iter(|| ds_algebra(std::hint::black_box(&field)))
    });
}

fn bench_valuation_audit(c: &mut Criterion) {
    let space = names(3);
    let weights = [rat(1, 6), rat(1, 3), rat(1, 2)];
    let (field, mu) = associated_partial_space(&space, &weights).unwrap();
    let algebra = ds_algebra(&field);
    let v = measure_as_valuation(&mu);
    c.bench_function("partial-valuation axioms, 27 elements", |b| {
        b.iter(|| is_partial_valuation(std::hint::black_box(&algebra), &v))
    });
}

fn bench_conditioning(c: &mut Criterion) {
    let space = names(3);
    let weights = [rat(1, 6), rat(1, 3), rat(1, 2)];
    let (field, mu) = associated_partial_space(&space, &weights).unwrap();
    let algebra = ds_algebra(&field);
    let v = measure_as_valuation(&mu);
    let h = field
        .index_of(kleeneprob::partial_set::PartialSet::new(0b111, 0))
    .unwrap();
    let e = field.index_of(kleeneprob::partial_set::PartialSet::new(0b011, 0)).unwrap();
    c.bench_function("conditional valuation on D(S) |S|=3", |b| {
        b.iter(|| conditional_partial_valuation(&algebra, &v, std::hint::black_box(e)))
    });
    c.bench_function("weak Bayes on D(S) |S|=3", |b| {
        b.iter(|| weak_bayes(&algebra, &v, std::hint::black_box(h), e))
    });
}

fn bench_meaning(c: &mut Criterion) {
    let f = parse("(p0 | ~p1) & (p1 | n) & ~(p0 & p2)", 3, LogicKind::Kleene).unwrap();
    c.bench_function("meaning over 27 worlds, arity 3", |b| {
        b.iter(|| meaning_kleene(std::hint::black_box(&f), 3))
    });
}

criterion_group!(
    benches,
    bench_algebra_build,
    bench_valuation_audit,
    bench_conditioning,
    bench_meaning
);
criterion_main!(benches);
