//! Property tests over randomly generated hypergraphs.

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use weakis_core::algorithms::{edge_partition_is, k_weak_mis_large_k, phase_of, Phase};
use weakis_core::hypergraph::{generate, validate_against, GeneratorConfig, Hypergraph, VertexSet};
use weakis_core::verify::{
    is_alpha_beta, is_k_weak, is_k_weak_maximal, AlphaBetaMode, BruteForcePredicate,
};

fn arb_hypergraph(
    max_n: usize,
    max_edges: usize,
    max_rank: usize,
) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(move |n| {
        vec(btree_set(0..n as u32, 1..=max_rank.min(n)), 0..=max_edges).prop_map(move |edges| {
            let edges: Vec<Vec<u32>> = edges.into_iter().map(|e| e.into_iter().collect()).collect();
            Hypergraph::new(n, edges).expect("sets are valid edges")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn underlying_graph_is_idempotent(h in arb_hypergraph(9, 8, 4)) {
        let once = h.underlying_graph();
        prop_assert_eq!(once.underlying_graph(), once.clone());
        prop_assert!(once.rank() <= 2);
    }

    #[test]
    fn induced_is_idempotent(h in arb_hypergraph(9, 8, 4), mask in any::<u64>()) {
        let keep = VertexSet::from_bitmask(h.vertex_count(), mask & ((1 << h.vertex_count()) - 1), "prop");
        let (once, _) = h.induced(&keep);
        let (twice, _) = once.induced(&keep);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn distance_satisfies_triangle_inequality(h in arb_hypergraph(8, 8, 4)) {
        let n = h.vertex_count() as u32;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if let (Some(a), Some(b)) = (h.distance(u, w), h.distance(w, v)) {
                        if let Some(c) = h.distance(u, v) {
                            prop_assert!(c <= a + b);
                        } else {
                            prop_assert!(false, "u-w and w-v connected but u-v not");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distance_one_iff_shared_edge(h in arb_hypergraph(8, 8, 4)) {
        let n = h.vertex_count() as u32;
        for u in 0..n {
            for v in 0..n {
                if u == v { continue; }
                let share = h.edges().iter().any(|e| e.contains(&u) && e.contains(&v));
                prop_assert_eq!(h.distance(u, v) == Some(1), share);
            }
        }
    }

    #[test]
    fn generated_instances_validate(
        n in 4usize..40,
        rank in 2usize..6,
        max_degree in 1usize..4,
        uniform in any::<bool>(),
        lambda in prop::option::of(1usize..3),
        seed in any::<u64>(),
    ) {
        prop_assume!(n >= rank);
        let cfg = GeneratorConfig { n, rank, max_degree, uniform, lambda, seed };
        // Infeasible configs may be rejected outright; accepted outputs
        // must honor every cap.
        if let Ok(h) = generate(&cfg) {
            prop_assert!(validate_against(&h, &cfg).is_ok());
        }
    }

    #[test]
    fn text_and_json_round_trip(h in arb_hypergraph(10, 10, 5)) {
        let text = h.to_text();
        let parsed = Hypergraph::from_text(&text).unwrap();
        prop_assert_eq!(&parsed, &h);
        prop_assert_eq!(parsed.to_text(), text);

        let json = h.to_json();
        let parsed = Hypergraph::from_json(&json).unwrap();
        prop_assert_eq!(&parsed, &h);
        prop_assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn checkers_agree_with_naive_predicates(h in arb_hypergraph(7, 6, 4)) {
        let n = h.vertex_count();
        for mask in 0u64..(1 << n) {
            let s = VertexSet::from_bitmask(n, mask, "prop");
            for k in 1..=3usize {
                prop_assert_eq!(
                    is_k_weak_maximal(&h, &s, k).pass,
                    weakis_core::verify::naive_satisfies(&h, mask, BruteForcePredicate::KWeakMis { k })
                );
            }
            let mode = AlphaBetaMode::Disjunctive;
            for (alpha, beta) in [(1usize, 1usize), (1, 2), (2, 3)] {
                prop_assert_eq!(
                    is_alpha_beta(&h, &s, alpha, beta, mode).pass,
                    weakis_core::verify::naive_satisfies(
                        &h,
                        mask,
                        BruteForcePredicate::AlphaBeta { alpha, beta, mode }
                    )
                );
            }
        }
    }

    #[test]
    fn k_weak_monotone_in_k(h in arb_hypergraph(7, 6, 4), mask in any::<u64>()) {
        let n = h.vertex_count();
        let s = VertexSet::from_bitmask(n, mask & ((1 << n) - 1), "prop");
        for k in 0..4usize {
            if is_k_weak(&h, &s, k).pass {
                prop_assert!(is_k_weak(&h, &s, k + 1).pass);
            }
        }
    }

    #[test]
    fn phase_of_is_monotone(k in 1usize..200) {
        let mut last = Phase::Index(0);
        for sat in 0..=k {
            let now = phase_of(sat, k).unwrap();
            let ok = match (last, now) {
                (_, Phase::Saturated) => true,
                (Phase::Saturated, _) => false,
                (Phase::Index(a), Phase::Index(b)) => b >= a,
            };
            prop_assert!(ok, "k={} sat={}", k, sat);
            last = now;
        }
        prop_assert_eq!(phase_of(k, k).unwrap(), Phase::Saturated);
    }

    #[test]
    fn edge_partition_outputs_validate(
        h in arb_hypergraph(10, 8, 5),
        seed in any::<u64>(),
    ) {
        prop_assume!(h.rank() >= 2);
        let rank = h.rank();
        for (alpha, beta) in [(1usize, rank - 1), (1, 1)] {
            prop_assume!(beta >= alpha && beta < rank);
            let run = edge_partition_is(&h, alpha, beta, seed).unwrap();
            prop_assert!(is_alpha_beta(&h, &run.set, alpha, beta, AlphaBetaMode::Disjunctive).pass);
        }
    }

    #[test]
    fn k_weak_mis_outputs_validate_on_uniform_instances(
        n in 6usize..24,
        rank in 3usize..6,
        max_degree in 1usize..4,
        seed in any::<u64>(),
    ) {
        prop_assume!(n >= rank);
        let cfg = GeneratorConfig { n, rank, max_degree, uniform: true, lambda: None, seed };
        if let Ok(h) = generate(&cfg) {
            let k = h.rank() - 1;
            let run = k_weak_mis_large_k(&h, k, seed).unwrap();
            prop_assert!(is_k_weak_maximal(&h, &run.set, k).pass);
        }
    }
}
