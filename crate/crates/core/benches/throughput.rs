//! Sequential vs rayon-parallel line throughput.
//!
//! Without the `parallel` feature both variants run sequentially, which is
//! a useful baseline for the scheduling overhead.

use std::hint::black_box;

use anusaaraka::batch::{self, Execution};
use anusaaraka::bundled;
use anusaaraka::Engine;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const LINES: usize = 4_000;
const MAX_LEN: usize = 12;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn throughput(c: &mut Criterion) {
    for pair in ["hin-eng", "tel-hin"] {
        let engine = Engine::new(bundled::resources(pair).unwrap()).unwrap();
        let lines = batch::generate(&engine, 0, LINES, MAX_LEN, Execution::Parallel).unwrap();
        let outputs: Vec<String> = batch::transduce_lines(&lines, &engine, Execution::Parallel)
            .into_iter()
            .map(|t| t.output)
            .collect();

        let mut group = c.benchmark_group(format!("{pair}/{LINES}-lines"));
        group.throughput(Throughput::Elements(LINES as u64));
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new("transduce", name), &exec, |b, &exec| {
                b.iter(|| batch::transduce_lines(black_box(&lines), &engine, exec))
            });
            group.bench_with_input(BenchmarkId::new("invert", name), &exec, |b, &exec| {
                b.iter(|| batch::invert_lines(black_box(&outputs), &engine, exec))
            });
            group.bench_with_input(BenchmarkId::new("roundtrip", name), &exec, |b, &exec| {
                b.iter(|| batch::roundtrip(black_box(&lines), &engine, exec))
            });
            group.bench_with_input(BenchmarkId::new("generate", name), &exec, |b, &exec| {
                b.iter(|| batch::generate(&engine, black_box(0), LINES, MAX_LEN, exec))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, throughput);
criterion_main!(benches);
