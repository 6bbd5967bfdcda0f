use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use lmstat_core::catalog::family;
use lmstat_core::minkowski::inversion;
use lmstat_core::ruled::{classify_ruled, ClassifyOptions};
use lmstat_core::verifier::{inversion_transport_family, scan_family, DEFAULT_RESIDUAL_TOL};
use lmstat_core::MVec;

fn residual_scan(c: &mut Criterion) {
    let f = family("pr1-3a?n=2&r=1").unwrap();
    c.bench_function("scan pr1-3a 64x16", |b| {
        b.iter(|| scan_family(black_box(&f), None, None, DEFAULT_RESIDUAL_TOL))
    });
    let f = family("pr1-3a?n=3&r=1").unwrap();
    c.bench_function("scan pr1-3a n=3", |b| {
        b.iter(|| scan_family(black_box(&f), None, Some(&[12, 12, 12]), DEFAULT_RESIDUAL_TOL))
    });
}

fn ruled(c: &mut Criterion) {
    let f = family("thli-1").unwrap();
    let chart = f.ruled.clone().unwrap();
    let opts = ClassifyOptions::default();
    c.bench_function("classify thli-1", |b| b.iter(|| classify_ruled(black_box(&chart), &opts)));
}

fn inversion_maps(c: &mut Criterion) {
    let p = MVec::xyz(0.3, -1.2, 0.7);
    c.bench_function("inversion point", |b| b.iter(|| inversion(black_box(&p))));
    let f = family("plane-x3?c=0.5&part=plus").unwrap();
    c.bench_function("transport plane-x3 16x8", |b| {
        b.iter(|| inversion_transport_family(black_box(&f), Some(&[16, 8])))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = residual_scan, ruled, inversion_maps
}
criterion_main!(benches);
