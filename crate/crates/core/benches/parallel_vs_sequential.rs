//! Parallel core against a one-thread pool on the same workloads.
//!
//! With the default `parallel` feature each workload runs twice: once in a single-thread rayon
//! pool and once in the global pool. Build with `--no-default-features` to time the plain
//! sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperbound::constructions::{composed_construction, find_kst, norm_graph};
use hyperbound::patterns::{complete_bipartite, PatternSpec};
use hyperbound::solvers::{ex_exact, z_exact, HostKind};

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    vec![
        (
            "composed(2,3,3)",
            Box::new(|| {
                composed_construction(2, 3, 3).unwrap();
            }),
        ),
        (
            "K33 search in PG(8,3)",
            Box::new(|| {
                let g = norm_graph(8, 3).unwrap();
                assert!(find_kst(&g, 3, 3).is_none());
            }),
        ),
        (
            "ex(9,C4)",
            Box::new(|| {
                let c4 = PatternSpec::parse("C4").unwrap();
                assert_eq!(ex_exact(9, &[c4], HostKind::Graph, None).unwrap().value, 13);
            }),
        ),
        (
            "Z(5,5,K22)",
            Box::new(|| {
                assert_eq!(z_exact(5, 5, &complete_bipartite(2, 2)).unwrap().value, 12);
            }),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (name, work) in workloads() {
        if cfg!(feature = "parallel") {
            let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_function(BenchmarkId::new("one-thread", name), |b| {
                b.iter(|| single.install(&*work))
            });
            let threads = rayon::current_num_threads();
            group.bench_function(BenchmarkId::new(format!("{threads}-threads"), name), |b| b.iter(&work));
        } else {
            group.bench_function(BenchmarkId::new("sequential", name), |b| b.iter(&work));
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
