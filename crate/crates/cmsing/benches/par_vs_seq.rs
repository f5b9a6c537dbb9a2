//! Compares the parallel map primitive against its sequential fallback
//! on the two workloads that dominate real runs: exact ranks of dense
//! rational matrices and per-degree graded-dimension computations.

use criterion::{criterion_group, criterion_main, Criterion};
use cmsing::matrix::{exact_rank, Mat};
use cmsing::par::{map_collect, map_collect_seq};
use cmsing::scalar::{ratio, Rat};

fn rank_inputs() -> Vec<Mat<Rat>> {
    // deterministic dense rational matrices of full-ish rank
    (0..8)
        .map(|s: i64| {
            Mat::from_fn(40, 40, |i, j| {
                let i = i as i64;
                let j = j as i64;
                ratio((i * j + s * 7 + 3) % 23 - 11, i + j + 1)
            })
        })
        .collect()
}

fn bench_par_vs_seq(c: &mut Criterion) {
    let mut group = c.benchmark_group("par_vs_seq");
    group.sample_size(10);

    let mats = rank_inputs();
    group.bench_function("rank_sweep/parallel", |b| {
        b.iter(|| map_collect(mats.clone(), |m| exact_rank(&m)))
    });
    group.bench_function("rank_sweep/sequential", |b| {
        b.iter(|| map_collect_seq(mats.clone(), |m| exact_rank(&m)))
    });

    let degrees: Vec<(u32, u64)> = (0..=10).map(|n| (4u32, n as u64)).collect();
    group.bench_function("graded_dimensions/parallel", |b| {
        b.iter(|| map_collect(degrees.clone(), |(d, n)| cmsing::hilbert::graded_dimension(d, n)))
    });
    group.bench_function("graded_dimensions/sequential", |b| {
        b.iter(|| {
            map_collect_seq(degrees.clone(), |(d, n)| cmsing::hilbert::graded_dimension(d, n))
        })
    });

    group.finish();
}

criterion_group!(benches, bench_par_vs_seq);
criterion_main!(benches);
