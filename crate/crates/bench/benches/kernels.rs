use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ritt_bench::fixture;
use ritt_core::calculus::{fc_contour, Holomorphic};
use ritt_core::classify::{resolvent_constant, SamplerConfig};
use ritt_core::domains::{build_polygon, PolygonConfig};
use ritt_core::linalg::{op_norm, random_matrix, spectrum};
use ritt_core::quad::QuadConfig;
use ritt_core::rbound::{rbound_lower, SearchConfig};
use ritt_core::Polynomial;

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("linalg");
    for dim in [8, 32] {
        let t = random_matrix(dim, 5, 1.0);
        g.bench_with_input(BenchmarkId::new("spectrum", dim), &t, |b, t| b.iter(|| spectrum(t).unwrap()));
        g.bench_with_input(BenchmarkId::new("op_norm_p3", dim), &t, |b, t| b.iter(|| op_norm(t, 3.0)));
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let f = fixture(2, 8, 11);
    c.bench_function("resolvent_constant_coarse", |b| b.iter(|| resolvent_constant(&f.t, &f.e, &SamplerConfig::coarse()).unwrap()));
}

fn calculus(c: &mut Criterion) {
    let f = fixture(2, 8, 12);
    let phi = &Polynomial::vanishing(f.e.points()) * &Polynomial::from_real(&[0.5, -0.2, 0.1, 0.3]);
    let phi = Holomorphic::Poly(phi);
    c.bench_function("fc_contour", |b| b.iter(|| fc_contour(&phi, &f.t, &f.e, f.s, &QuadConfig::default()).unwrap()));
}

fn polygon(c: &mut Criterion) {
    let f = fixture(3, 8, 13);
    let cfg = PolygonConfig::default();
    c.bench_function("build_polygon", |b| b.iter(|| build_polygon(&f.t, &f.e, FRAC_PI_4, FRAC_PI_3, &cfg).unwrap()));
}

fn rbound(c: &mut Criterion) {
    let family: Vec<_> = (0..8).map(|k| random_matrix(6, 100 + k, 1.0)).collect();
    let cfg = SearchConfig { n_max: 4, restarts: 2, ..SearchConfig::default() };
    c.bench_function("rbound_lower_p3", |b| b.iter(|| rbound_lower(&family, 3.0, &cfg).unwrap()));
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = linalg, classify, calculus, polygon, rbound
}
criterion_main!(kernels);
