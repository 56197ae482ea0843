//! Sequential against data-parallel sweeps over diagram corpora.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use widealloc::enumerate::diagrams_by_blocks;
use widealloc::harness::{search, SearchConfig};
use widealloc::{fill_via_allocation, is_wide, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn harness_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for max_cells in [12, 14] {
        for (name, execution) in MODES {
            let config = SearchConfig {
                max_cells,
                max_p: None,
                execution,
            };
            g.bench_with_input(BenchmarkId::new(name, max_cells), &config, |b, cfg| {
                b.iter(|| black_box(search(cfg).unwrap()))
            });
        }
    }
    g.finish();
}

fn pipeline(c: &mut Criterion) {
    let wide: Vec<_> = diagrams_by_blocks(30, 3).into_iter().filter(is_wide).collect();
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for (name, execution) in MODES {
        g.bench_function(BenchmarkId::new(name, wide.len()), |b| {
            b.iter(|| black_box(execution.map_collect(&wide, |y| fill_via_allocation(y).is_ok())))
        });
    }
    g.finish();
}

criterion_group!(benches, harness_search, pipeline);
criterion_main!(benches);
