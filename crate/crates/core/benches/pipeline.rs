use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use corrclust::baselines::{brute_force_opt_with, Pruning};
use corrclust::metric::sampled::{build_sampled_oracle_with, SampleConfig};
use corrclust::metric::{build_sparse_oracle_with, common_pos_counts_dense_with};
use corrclust::synth::{random_bounded_degree, random_signed_gnp};
use corrclust::Exec;

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn dense_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense_counts");
    for n in [200usize, 800] {
        let g = random_signed_gnp(n, 0.3, 1).unwrap();
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| common_pos_counts_dense_with(g, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sparse_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("sparse_oracle");
    group.sample_size(20);
    let g = random_bounded_degree(5000, 50, 60_000, 2).unwrap();
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| build_sparse_oracle_with(&g, exec)));
    }
    group.finish();
}

fn sampled_estimates(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampled_estimates");
    group.sample_size(10);
    let g = random_signed_gnp(400, 0.5, 3).unwrap();
    // A large epsilon keeps m(n) below the degrees so sampling is real.
    let cfg = SampleConfig {
        epsilon: 0.9,
        seed: 3,
    };
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| build_sampled_oracle_with(&g, &cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn exhaustive_opt(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_opt");
    group.sample_size(10);
    let g = random_signed_gnp(10, 0.4, 4).unwrap();
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| brute_force_opt_with(&g, Pruning::On, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    dense_counts,
    sparse_oracle,
    sampled_estimates,
    exhaustive_opt
);
criterion_main!(benches);
