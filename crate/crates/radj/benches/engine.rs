//! Run once with default features and once with `--no-default-features`; the
//! benchmark ids carry the engine name so the two runs sit side by side in the report.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use radj::adj_oracle::compare_with_zigzag;
use radj::zigzag::{self, Zigzag, DEFAULT_DEPTH, ORACLE_DEPTH};
use radj::{fixtures, par};

fn engine() -> &'static str {
    if par::is_parallel() {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_enumerate(c: &mut Criterion) {
    let x = fixtures::walking_arrow();
    let src = Zigzag::parse(&x, "x: f> f<").unwrap();
    let tgt = Zigzag::parse(&x, "x: f> f< f> f<").unwrap();
    c.bench_function(&format!("enumerate_cells/arrow/bound3/{}", engine()), |b| {
        b.iter(|| zigzag::enumerate_cells(&x, black_box(&src), &tgt, 3, DEFAULT_DEPTH))
    });
}

fn bench_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("compare_with_zigzag");
    g.sample_size(10);
    g.bench_function(format!("bound2/{}", engine()), |b| b.iter(|| compare_with_zigzag(black_box(2), ORACLE_DEPTH)));
    g.finish();
}

fn bench_snakes(c: &mut Criterion) {
    let fx = fixtures::fixture_categories();
    c.bench_function(&format!("snake_check/all_fixtures/{}", engine()), |b| {
        b.iter(|| par::all(&fx, |(_, x)| x.morphisms().all(|f| zigzag::snake_check(x, f, DEFAULT_DEPTH).ok())))
    });
}

fn bench_truncate(c: &mut Criterion) {
    let fx = fixtures::fixture_categories();
    c.bench_function(&format!("truncate1/all_fixtures/legs4/{}", engine()), |b| {
        b.iter(|| par::map(&fx, |(_, x)| zigzag::truncate1(x, black_box(4)).homs.len()))
    });
}

criterion_group!(benches, bench_enumerate, bench_oracle, bench_snakes, bench_truncate);
criterion_main!(benches);
