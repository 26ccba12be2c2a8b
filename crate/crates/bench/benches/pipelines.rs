//! Benchmarks for the heavy paths: the Walsh–Hadamard transform at desk
//! scale, Hart's influence formula, the series evaluations behind the
//! bounds, the Niho construction, and the exhaustive base scan.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fei_core::bf::BooleanFunction;
use fei_core::biased::biased_spectrum;
use fei_core::bounds::{beta, gamma, lb2};
use fei_core::lex::{hart_influence, lex_profile_truncated, lex_truth_table};
use fei_core::lipschitz::delta_profile;
use fei_core::niho::niho;
use fei_core::search::search_biased_bases;
use fei_core::PHI;

fn bench_wht(c: &mut Criterion) {
    let f16 = BooleanFunction::from_fn(16, |i| (i * 2654435761) % 5 < 2).unwrap();
    c.bench_function("spectrum n=16", |b| b.iter(|| black_box(&f16).spectrum()));
    let f20 = lex_truth_table(20, (2u64 << 20) / 3).unwrap();
    c.bench_function("profile n=20", |b| b.iter(|| black_box(&f20).profile()));
}

fn bench_lex(c: &mut Criterion) {
    c.bench_function("hart_influence n=24", |b| {
        b.iter(|| hart_influence(24, black_box(11_184_811)).unwrap())
    });
    c.bench_function("lex_profile_truncated phi 60", |b| {
        b.iter(|| lex_profile_truncated(black_box(PHI), 60).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    c.bench_function("beta(1/2) tol 1e-12", |b| b.iter(|| beta(black_box(0.5), 1e-12).unwrap()));
    c.bench_function("gamma(1/2) tol 1e-12", |b| b.iter(|| gamma(black_box(0.5), 1e-12).unwrap()));
    c.bench_function("lb2 at 60 bits", |b| b.iter(|| lb2(black_box(60)).unwrap()));
}

fn bench_heavy(c: &mut Criterion) {
    c.bench_function("niho n=12", |b| b.iter(|| niho(black_box(12)).unwrap()));
    let f = BooleanFunction::from_fn(10, |i| (i * 0x9e3779b9) % 7 < 3).unwrap();
    let idx = (0..f.size()).find(|&i| !f.get(i)).unwrap();
    c.bench_function("delta_profile n=10", |b| {
        b.iter(|| delta_profile(black_box(&f), idx).unwrap())
    });
    let f8 = BooleanFunction::from_fn(8, |i| i.count_ones() % 3 != 1).unwrap();
    let eta = vec![0.25; 8];
    c.bench_function("biased_spectrum n=8", |b| {
        b.iter(|| biased_spectrum(black_box(&f8), &eta).unwrap())
    });
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("biased bases k<=3", |b| {
        b.iter(|| search_biased_bases(3, 5, true).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_wht, bench_lex, bench_series, bench_heavy);
criterion_main!(benches);
