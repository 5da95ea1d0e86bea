//! Generate one instance and push it through every solver, printing the
//! checked outcome of each.
//!
//! ```sh
//! cargo run -p weakis-core --example pipeline
//! ```

use weakis_core::algorithms::{
    edge_partition_is, extract_maximal_matching, find_ruling_set, high_rank_remove,
    k_weak_mis_large_k, lll_feasible, moser_tardos_is, zero_round_is,
};
use weakis_core::hypergraph::{generate, GeneratorConfig};
use weakis_core::verify::{
    is_alpha_beta, is_k_weak_maximal, is_maximal_matching, is_ruling_set, AlphaBetaMode,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GeneratorConfig {
        n: 120,
        rank: 8,
        max_degree: 4,
        uniform: true,
        lambda: None,
        seed: 11,
    };
    let h = generate(&cfg)?;
    println!(
        "instance: {} vertices, {} edges, rank {}, max degree {}",
        h.vertex_count(),
        h.edge_count(),
        h.rank(),
        h.max_degree()
    );

    let (alpha, beta) = (2, 5);
    let run = edge_partition_is(&h, alpha, beta, 1)?;
    println!(
        "edge-partition ({alpha},{beta})-IS: {} members, {} rounds ({} coloring + {} selection), valid {}",
        run.set.len(),
        run.total_rounds(),
        run.coloring_rounds,
        run.selection_rounds,
        is_alpha_beta(&h, &run.set, alpha, beta, AlphaBetaMode::Disjunctive).pass
    );

    let k = h.rank() - 1;
    let run = k_weak_mis_large_k(&h, k, 1)?;
    println!(
        "k-weak MIS (k={k}): {} members in {} iterations, valid {}",
        run.set.len(),
        run.iterations,
        is_k_weak_maximal(&h, &run.set, k).pass
    );

    let run = find_ruling_set(&h, 2, 1)?;
    println!(
        "(2,2)-ruling set: {} members, valid {}",
        run.set.len(),
        is_ruling_set(&h, &run.set, 2, 2).pass
    );

    let run = extract_maximal_matching(&h, 1)?;
    println!(
        "maximal matching: {} edges from {} MIS rounds, valid {}",
        run.edges.len(),
        run.mis_invocations,
        is_maximal_matching(&h, &run.edges).pass
    );

    let run = zero_round_is(&h, 1, 6, 1)?;
    println!(
        "zero-round (1,6)-IS: {} members with join probability {:.3}, valid {}",
        run.set.len(),
        run.join_probability,
        is_alpha_beta(&h, &run.set, 1, 6, AlphaBetaMode::Disjunctive).pass
    );

    let report = lll_feasible(h.rank(), h.max_degree(), 1, 6);
    println!(
        "resampling feasibility at (1,6): {} (e*p*(d+1) = {:.3e})",
        report.feasible, report.ep_d_plus_one
    );
    let outcome = moser_tardos_is(&h, 1, 6, 1, 100_000)?;
    println!(
        "resampling (1,6)-IS: {} members after {} resamples, converged {}, valid {}",
        outcome.set.len(),
        outcome.resamples,
        outcome.converged,
        outcome.valid
    );

    let run = high_rank_remove(&h, 2, 1)?;
    let min_survivors = run.survivors_per_edge.iter().min().copied().unwrap_or(0);
    println!(
        "high-rank removal: {} members, every edge kept at least {min_survivors}",
        run.set.len()
    );
    Ok(())
}
