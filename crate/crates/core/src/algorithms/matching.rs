//! Maximal matching extraction by repeated 1-weak MIS rounds.
//!
//! Each iteration computes a 1-weak MIS of the residual hypergraph; its
//! members claim incident edges greedily (ascending vertex ID, lowest
//! original edge index first, skipping edges that clash with picks already
//! made this iteration). Vertices of the picked edges disappear together
//! with all their edges. A member whose every edge clashed loses all of
//! them too, so each survivor's degree drops every iteration and at most
//! `Δ` MIS invocations are needed.

use crate::coloring::extend_trace;
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};
use crate::localsim::RoundTrace;
use crate::rng::{stream_seed, StreamDomain};

use super::edge_partition::edge_partition_is;
use super::AlgoError;

#[derive(Debug, Clone)]
pub struct MatchingRun {
    /// Original edge indexes of the matching, ascending.
    pub edges: Vec<usize>,
    /// Number of 1-weak MIS invocations; at most the original max degree.
    pub mis_invocations: usize,
    pub rounds: usize,
    pub messages: u64,
    pub trace: Vec<RoundTrace>,
}

/// Extract a maximal matching: a set of pairwise-disjoint edges such that
/// every edge of `h` intersects one of them.
pub fn extract_maximal_matching(h: &Hypergraph, seed: u64) -> Result<MatchingRun, AlgoError> {
    let n = h.vertex_count();
    let mut alive_edges: Vec<usize> = (0..h.edge_count()).collect();
    let mut matched: Vec<usize> = Vec::new();
    let mut mis_invocations = 0;
    let mut rounds = 0;
    let mut messages = 0;
    let mut trace: Vec<RoundTrace> = Vec::new();

    while !alive_edges.is_empty() {
        let residual_edges: Vec<Vec<VertexId>> =
            alive_edges.iter().map(|&e| h.edge(e).to_vec()).collect();
        let residual = Hypergraph::new(n, residual_edges).expect("alive edges stay valid");

        let mis = if residual.rank() <= 1 {
            // Only singleton edges remain: every vertex joins.
            VertexSet::full(n, "residual_mis")
        } else {
            let run = edge_partition_is(
                &residual,
                1,
                1,
                stream_seed(seed, StreamDomain::Level, mis_invocations as u64),
            )?;
            rounds += run.total_rounds();
            messages += run.messages;
            extend_trace(&mut trace, &run.trace);
            run.set
        };
        mis_invocations += 1;

        // Members claim edges: lowest original index first, never clashing
        // with an edge already claimed this iteration.
        let mut claimed: Vec<usize> = Vec::new();
        let mut taken = vec![false; n];
        for v in mis.members() {
            let mut candidates: Vec<usize> = residual
                .incident_edges(v)
                .iter()
                .map(|&slot| alive_edges[slot as usize])
                .collect();
            candidates.sort_unstable();
            for e in candidates {
                if h.edge(e).iter().all(|&u| !taken[u as usize]) {
                    for &u in h.edge(e) {
                        taken[u as usize] = true;
                    }
                    claimed.push(e);
                    break;
                }
            }
        }

        // Remove the vertices of the claimed edges and every edge touching
        // them.
        alive_edges.retain(|&e| h.edge(e).iter().all(|&u| !taken[u as usize]));
        matched.extend(claimed);
    }

    matched.sort_unstable();
    Ok(MatchingRun {
        edges: matched,
        mis_invocations,
        rounds,
        messages,
        trace,
    })
}
