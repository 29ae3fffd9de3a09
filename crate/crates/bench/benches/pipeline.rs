use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rht_core::mapmodel::sphere_model;
use rht_core::testkit;
use rht_core::{formality_pipeline, int, Cdga, MapSpaceProblem, RatMatrix, YModel};

fn random_matrix(n: usize, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<_>> =
        (0..n).map(|_| (0..n).map(|_| if rng.gen_bool(0.3) { int(rng.gen_range(-5..=5)) } else { int(0) }).collect()).collect();
    RatMatrix::from_rows(&rows)
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [16, 32, 48] {
        let m = random_matrix(n, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| m.rank()));
    }
    g.finish();
}

fn section4_target() -> Cdga {
    Cdga::from_text(&[("x1", 4), ("x2", 4), ("y", 7)], &[("y", "x1*x2")], &[], rht_core::COMPLETE).unwrap()
}

fn cohomology(c: &mut Criterion) {
    let y = section4_target();
    let mut g = c.benchmark_group("cohomology");
    for n in [12, 24, 36] {
        g.bench_with_input(BenchmarkId::new("target", n), &n, |b, &n| b.iter(|| y.cohomology_ranks(n).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pure = testkit::pure_cdga(&mut rng);
    g.bench_function("random_pure_20", |b| b.iter(|| pure.cohomology_ranks(20).unwrap()));
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let prob = MapSpaceProblem::new("section4", sphere_model(2).unwrap(), YModel::Sullivan(section4_target()));
    let mut g = c.benchmark_group("formality");
    g.sample_size(10);
    for n in [12, 20] {
        g.bench_with_input(BenchmarkId::new("section4", n), &n, |b, &n| b.iter(|| formality_pipeline(&prob, n).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, rank, cohomology, pipeline);
criterion_main!(benches);
