use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use simpctx::contextuality::classify_all;
use simpctx::limits::Limits;
use simpctx::par::Execution;
use simpctx::random::{random_square, square_to_punctured_torus, torus_pair};

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = torus_pair();
    let boxes: Vec<_> = (0..64).map(|_| square_to_punctured_torus(&random_square(&mut rng, 12), &t)).collect();
    let limits = Limits::default();
    let mut group = c.benchmark_group("classify_all");
    group.sample_size(10);
    for mode in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &boxes, |b, ps| {
            b.iter(|| classify_all(ps, &limits, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
