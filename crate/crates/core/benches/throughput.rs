//! Throughput comparison between the data-parallel and sequential builds.
//! Benchmark ids carry the active mode, so running once with default
//! features and once with `--no-default-features` produces comparable
//! entries side by side in the criterion report.

use criterion::{criterion_group, criterion_main, Criterion};
use outfn_core::expectation::empirical_mean;
use outfn_core::graph;
use outfn_core::parallel::MODE;
use outfn_core::presentation::{standard_assignment, verify_assignment, ExactAutOps, Flavor};
use outfn_core::schreier::embed_generators;
use outfn_core::theta::splitting_search;

fn relation_suite(c: &mut Criterion) {
    let map = standard_assignment(4);
    c.bench_function(&format!("relation_suite_rank4/{MODE}"), |b| {
        b.iter(|| {
            let report =
                verify_assignment(4, Flavor::Aut, &ExactAutOps { rank: 4 }, &|g| {
                    map.get(&g).cloned()
                })
                .unwrap();
            assert!(report.all_pass);
        })
    });
}

fn kernel_embedding(c: &mut Criterion) {
    c.bench_function(&format!("embed_generators_2_3/{MODE}"), |b| {
        b.iter(|| embed_generators(2, 3).unwrap().images.len())
    });
}

fn splitting(c: &mut Criterion) {
    c.bench_function(&format!("splitting_search_5_4/{MODE}"), |b| {
        b.iter(|| splitting_search(5, 4).unwrap().exists)
    });
}

fn mean_partial_sum(c: &mut Criterion) {
    c.bench_function(&format!("empirical_mean_100k/{MODE}"), |b| {
        b.iter(|| empirical_mean(100_000).unwrap())
    });
}

fn rose_symmetries(c: &mut Criterion) {
    let g = graph::rose(5).unwrap();
    c.bench_function(&format!("rose5_automorphisms/{MODE}"), |b| {
        b.iter(|| graph::automorphisms(&g).unwrap().len())
    });
}

criterion_group!(
    benches,
    relation_suite,
    kernel_embedding,
    splitting,
    mean_partial_sum,
    rose_symmetries
);
criterion_main!(benches);
