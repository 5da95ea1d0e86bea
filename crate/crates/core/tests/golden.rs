//! Frozen outputs for one fixed instance and seed.
//!
//! These pins were produced by this implementation and exist to catch
//! regressions in determinism: the same values must come out of every
//! run, on any thread count, with or without the `parallel` feature.

use weakis_core::algorithms::{
    edge_partition_is, extract_maximal_matching, find_ruling_set, high_rank_remove,
    k_weak_mis_large_k, moser_tardos_is, zero_round_is,
};
use weakis_core::hypergraph::{generate, GeneratorConfig};

fn instance() -> weakis_core::Hypergraph {
    generate(&GeneratorConfig {
        n: 40,
        rank: 5,
        max_degree: 3,
        uniform: true,
        lambda: None,
        seed: 2024,
    })
    .unwrap()
}

#[test]
fn generation_is_pinned() {
    let h = instance();
    assert_eq!(h.edge_count(), 22);
    assert_eq!(h.edge(0), &[8, 11, 19, 23, 34]);
    assert_eq!(h.edge(21), &[15, 17, 18, 28, 36]);
    assert_eq!(h.max_degree(), 3);
}

#[test]
fn deterministic_algorithms_are_pinned() {
    let h = instance();
    let ep = edge_partition_is(&h, 1, 3, 9).unwrap();
    assert_eq!(
        ep.set.members(),
        vec![0, 1, 2, 3, 6, 10, 11, 17, 23, 24, 27, 28, 29, 31, 32, 34, 35, 36, 37, 38, 39]
    );
    assert_eq!(ep.total_rounds(), 37);

    let kw = k_weak_mis_large_k(&h, 4, 9).unwrap();
    assert_eq!(
        kw.set.members(),
        vec![
            0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21, 22, 23, 24,
            25, 26, 28, 29, 30, 38, 39
        ]
    );
    assert_eq!(kw.iterations, 1);

    let rs = find_ruling_set(&h, 2, 9).unwrap();
    assert_eq!(rs.set.members(), vec![0, 1, 2, 3, 17, 38]);

    let mm = extract_maximal_matching(&h, 9).unwrap();
    assert_eq!(mm.edges, vec![3, 5, 8, 9, 16]);
}

#[test]
fn randomized_algorithms_are_pinned() {
    let h = instance();
    let zr = zero_round_is(&h, 1, 3, 9).unwrap();
    assert_eq!(
        zr.set.members(),
        vec![0, 8, 9, 11, 13, 14, 15, 16, 17, 19, 23, 24, 25, 28, 31, 33, 36, 38]
    );

    let mt = moser_tardos_is(&h, 1, 3, 9, 100_000).unwrap();
    assert_eq!(
        mt.set.members(),
        vec![0, 1, 2, 6, 7, 8, 14, 15, 16, 24, 25, 27, 28, 31, 33, 35, 36, 38]
    );
    assert_eq!(mt.resamples, 4);

    let hr = high_rank_remove(&h, 2, 9).unwrap();
    assert_eq!(hr.set.len(), 22);
}
