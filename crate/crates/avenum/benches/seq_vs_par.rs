//! Batch throughput with and without the rayon pool. The batch is a slice of
//! the fixture corpus; each cell is one GA or ADDM run with no verification.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use avenum::exec::Execution;
use avenum::numerics::ratio;
use avenum::run::{Algorithm, RunOptions};
use avenum::suite::{cells, corpus, prepare, run_cells, Backend, Prepared};

fn batch(c: &mut Criterion) {
    let preps: Vec<Prepared> = corpus(6).unwrap().iter().map(|f| prepare(f).unwrap()).collect();
    let cs = cells(preps.len(), &[ratio(1, 10), ratio(1, 100)], &[Algorithm::Ga, Algorithm::Addm]);
    let opts = RunOptions::default();
    let mut g = c.benchmark_group("corpus_batch");
    g.sample_size(10);
    for backend in [Backend::Float, Backend::Rational] {
        for exec in [Execution::Sequential, Execution::Parallel] {
            g.bench_with_input(BenchmarkId::new(format!("{backend}"), format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| run_cells(&preps, &cs, backend, &opts, false, exec))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
