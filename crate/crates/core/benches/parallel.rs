//! Parallel-versus-sequential timings for the bulk verification workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chord_weights::diagram::MarkedChordDiagram;
use chord_weights::exec;
use chord_weights::gf2::Gf2SymmetricMatrix;
use chord_weights::graph::intersection_graph;
use chord_weights::surgery::boundary_components;

/// Boundary tracing plus adjacency rank for every diagram in a batch —
/// the shape of the oracle cross-checks.
fn rank_against_boundary(batch: &[MarkedChordDiagram]) -> usize {
    batch
        .iter()
        .map(|d| {
            let rank = Gf2SymmetricMatrix::from_graph(&intersection_graph(d)).rank();
            assert_eq!(rank, d.degree() + 1 - boundary_components(d));
            rank
        })
        .sum()
}

fn bench_oracle_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_oracle");
    group.sample_size(10);
    for degree in [5usize, 6] {
        let batch = MarkedChordDiagram::enumerate(degree);
        group.bench_with_input(
            BenchmarkId::new("parallel_map", degree),
            &batch,
            |b, batch| {
                b.iter(|| {
                    exec::map(batch.clone(), |d| {
                        Gf2SymmetricMatrix::from_graph(&intersection_graph(d)).rank()
                            == d.degree() + 1 - boundary_components(d)
                    })
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("sequential_map", degree),
            &batch,
            |b, batch| {
                b.iter(|| {
                    exec::map_seq(batch.clone(), |d| {
                        Gf2SymmetricMatrix::from_graph(&intersection_graph(d)).rank()
                            == d.degree() + 1 - boundary_components(d)
                    })
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("direct_loop", degree),
            &batch,
            |b, batch| b.iter(|| rank_against_boundary(batch)),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_oracle_batches);
criterion_main!(benches);
