use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use delzant::{bundled, counting, volume, Execution, DEFAULT_GUARD};

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for (name, k) in [("delta4", 8u64), ("tesseract", 6), ("prism", 12)] {
        let h = bundled::load(name).unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), format!("{name}/k={k}")), &k, |b, &k| {
                b.iter(|| counting::count_lattice_points_with(black_box(&h), k, false, DEFAULT_GUARD, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn chamber_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("volume_polynomial");
    group.sample_size(10);
    for name in ["delta4", "tesseract"] {
        let h = bundled::load(name).unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_function(BenchmarkId::new(format!("{exec:?}"), name), |b| {
                b.iter(|| volume::volume_polynomial_with(black_box(&h), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle, chamber_sampling);
criterion_main!(benches);
