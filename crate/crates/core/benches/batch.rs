//! Parallel vs sequential batch paths. Build with `--no-default-features`
//! to see the parallel entry points fall back to the calling thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use bpk_core::{batch, scheme};

fn batch_benches(c: &mut Criterion) {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let pp = scheme::setup(128, b"bench").unwrap();
    let master = scheme::keygen(&pp, &mut rng);
    let users: Vec<_> = (0..4)
        .map(|_| scheme::keygen_user(&pp, &master.msk, &mut rng).unwrap().usk)
        .collect();
    let sppks: Vec<_> = (0..4)
        .map(|_| scheme::keygen_sp(&pp, &master.msk, &mut rng).sppk)
        .collect();
    let items = batch::nymgen_grid(&pp, &master.mpk, &users, &sppks, 1).unwrap();

    let mut group = c.benchmark_group("verify 16");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", items.len()), |b| {
        b.iter(|| batch::verify_all(&pp, &master.mpk, &items))
    });
    group.bench_function(BenchmarkId::new("sequential", items.len()), |b| {
        b.iter(|| batch::verify_all_sequential(&pp, &master.mpk, &items))
    });
    group.finish();

    let mut group = c.benchmark_group("nymgen grid 4x4");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| batch::nymgen_grid(&pp, &master.mpk, &users, &sppks, 2).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| batch::nymgen_grid_sequential(&pp, &master.mpk, &users, &sppks, 2).unwrap())
    });
    group.finish();
}

criterion_group!(benches, batch_benches);
criterion_main!(benches);
