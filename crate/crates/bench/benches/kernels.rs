use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordunit::dual::{subsequence_limit, CompactnessConfig};
use ordunit::operator::{openness_check, OpennessConfig};
use ordunit::functional::choquet;
use ordunit::{extension_interval, Capacity, Operator, OrderedSpace, Sampler};
use ordunit_bench::{cyclic_space, partial_fixture, square_capacity};

fn order_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_norm");
    for dim in [2, 4, 8, 16] {
        let space = cyclic_space(dim);
        let pts = Sampler::new(1).points(dim, 256);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|x| space.order_norm(black_box(x)).unwrap()).sum::<f64>())
        });
    }
    group.finish();
}

fn choquet_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("choquet");
    for n in [4, 8, 12] {
        let v = square_capacity(n);
        let pts = Sampler::new(2).points(n, 256);
        group.bench_with_input(BenchmarkId::from_parameter(n), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|x| choquet(&v, black_box(x)).unwrap()).sum::<f64>())
        });
    }
    group.finish();
}

fn extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("extension_interval");
    let space = cyclic_space(4);
    let ys = Sampler::new(3).points(4, 64);
    for m in [4, 16, 64] {
        let pf = partial_fixture(&space, m, 4);
        group.bench_with_input(BenchmarkId::from_parameter(m), &ys, |b, ys| {
            b.iter(|| ys.iter().map(|y| extension_interval(&pf, black_box(y)).unwrap().width()).sum::<f64>())
        });
    }
    group.finish();
}

fn openness(c: &mut Criterion) {
    let clamp = Operator::clamp();
    c.bench_function("openness/clamp_at_zero", |b| {
        b.iter(|| openness_check(&clamp, black_box(&[0.0, 0.0]), &OpennessConfig::new(0.25, 0.25)).unwrap())
    });
    c.bench_function("openness/clamp_at_2_4", |b| {
        b.iter(|| openness_check(&clamp, black_box(&[2.0, 4.0]), &OpennessConfig::new(1.0, 0.1)).unwrap())
    });
}

fn compactness(c: &mut Criterion) {
    let space = OrderedSpace::orthant(3).unwrap();
    let mut smp = Sampler::new(5);
    let caps: Vec<Capacity> = (0..100)
        .map(|_| {
            let a: Vec<f64> = (0..3).map(|_| smp.fraction()).collect();
            let total: f64 = a.iter().sum();
            Capacity::additive(&a.iter().map(|w| w / total).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    let cfg = CompactnessConfig { samples: 256, ..CompactnessConfig::default() };
    c.bench_function("subsequence_limit/n3_len100", |b| {
        b.iter(|| subsequence_limit(black_box(&caps), &space, &cfg).unwrap())
    });
}

criterion_group!(benches, order_norm, choquet_eval, extension, openness, compactness);
criterion_main!(benches);
