use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use seqclus::{initialize_data, mine, support_of_contiguous, MinerConfig, Statistic};
use seqclus_bench::corpus;

const SIZES: [usize; 2] = [100, 400];

fn bench_initialize(c: &mut Criterion) {
    let mut g = c.benchmark_group("initialize_data");
    for n in SIZES {
        let d = corpus(n, 60, 9);
        g.bench_function(format!("{n}_trajectories"), |b| {
            b.iter(|| initialize_data(black_box(&d)));
        });
    }
    g.finish();
}

fn bench_support(c: &mut Criterion) {
    let d = corpus(400, 60, 9);
    let bundle = initialize_data(&d);
    let planted: Vec<_> = ["a", "b"].iter().map(|s| d.element_id(s).unwrap()).collect();
    let triple: Vec<_> = ["c", "d", "e"].iter().map(|s| d.element_id(s).unwrap()).collect();

    let mut g = c.benchmark_group("support_of_contiguous");
    g.bench_function("planted_pair", |b| {
        b.iter(|| support_of_contiguous(black_box(&planted), &bundle));
    });
    g.bench_function("planted_triple", |b| {
        b.iter(|| support_of_contiguous(black_box(&triple), &bundle));
    });
    g.finish();
}

fn bench_mine(c: &mut Criterion) {
    let config = MinerConfig {
        statistic: Statistic::ZScore(-1.0),
        ..MinerConfig::new(20)
    };
    let mut g = c.benchmark_group("mine");
    for n in SIZES {
        let d = corpus(n, 60, 9);
        g.bench_function(format!("{n}_trajectories"), |b| {
            b.iter(|| mine(black_box(&d), &config));
        });
    }
    g.finish();
}

criterion_group!(benches, bench_initialize, bench_support, bench_mine);
criterion_main!(benches);
