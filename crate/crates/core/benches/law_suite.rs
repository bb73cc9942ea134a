use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bideal::oracle::law_suite;
use bideal::Execution;

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("law_suite");
    group.sample_size(10);
    for n in [5usize, 20] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let id = BenchmarkId::new(format!("{exec:?}").to_lowercase(), n);
            group.bench_with_input(id, &n, |b, &n| b.iter(|| law_suite(7, n, exec)));
        }
    }
    group.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
