use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use menurev::analysis::t_values;
use menurev::constructions::{gap_construction, shell_points};
use menurev::revenue::{brev, drev, srev, SearchConfig};
use menurev::rev_lp;
use menurev_bench::{distribution, menu};

fn optimal(c: &mut Criterion) {
    let mut g = c.benchmark_group("rev_lp");
    for n in [4usize, 8, 16] {
        let f = distribution(1, 2, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| rev_lp(black_box(f), false)));
    }
    g.finish();
}

fn restricted(c: &mut Criterion) {
    let f = distribution(2, 2, 6);
    c.bench_function("brev_n6", |b| b.iter(|| brev(black_box(&f))));
    c.bench_function("srev_n6", |b| b.iter(|| srev(black_box(&f))));
    c.bench_function("drev_bb_n6", |b| b.iter(|| drev(black_box(&f), SearchConfig::default())));
}

fn tbound(c: &mut Criterion) {
    let m = menu(3, 2, 12);
    c.bench_function("t_values_12", |b| b.iter(|| t_values(black_box(&m))));
}

fn shell(c: &mut Criterion) {
    let seq = shell_points(30, 1_000_000_000_000).expect("valid count");
    c.bench_function("gap_construction_30", |b| b.iter(|| gap_construction(black_box(&seq), 30)));
}

criterion_group!(benches, optimal, restricted, tbound, shell);
criterion_main!(benches);
