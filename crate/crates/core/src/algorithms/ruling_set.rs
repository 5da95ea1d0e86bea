//! Distance-(2, k) ruling sets by repeated rank reduction.
//!
//! Each level induces the hypergraph on the current survivors and keeps
//! roughly the middle third of every edge: an (ceil(r'/3), floor(2r'/3))
//! independent set. After at most `k - 1` levels (or once the induced rank
//! drops to 2) a plain MIS of the underlying graph finishes the job. Every
//! vertex dropped at level `i` is adjacent to a level-`i` survivor, so the
//! final members cover everything within distance `k`.

use crate::coloring::extend_trace;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::localsim::RoundTrace;
use crate::rng::{stream_seed, StreamDomain};

use super::edge_partition::edge_partition_is;
use super::AlgoError;

#[derive(Debug, Clone)]
pub struct RulingSetRun {
    pub set: VertexSet,
    /// Rank-reduction levels actually executed (at most `k - 1`).
    pub levels: usize,
    pub rounds: usize,
    pub messages: u64,
    pub trace: Vec<RoundTrace>,
}

/// Find a vertex set whose members share no edge and which leaves no
/// vertex farther than `k` away.
pub fn find_ruling_set(h: &Hypergraph, k: usize, seed: u64) -> Result<RulingSetRun, AlgoError> {
    if k < 1 {
        return Err(AlgoError::BadWeakness { k, rank: h.rank() });
    }
    let n = h.vertex_count();
    let mut survivors = VertexSet::full(n, "find_ruling_set");
    let mut levels = 0;
    let mut rounds = 0;
    let mut messages = 0;
    let mut trace: Vec<RoundTrace> = Vec::new();

    for level in 0..k.saturating_sub(1) {
        let (induced, _) = h.induced(&survivors);
        let rank = induced.rank();
        if rank <= 2 {
            break;
        }
        let alpha = rank.div_ceil(3);
        let beta = 2 * rank / 3;
        let run = edge_partition_is(
            &induced,
            alpha,
            beta,
            stream_seed(seed, StreamDomain::Level, level as u64),
        )?;
        // The induced instance keeps the full vertex universe, so vertices
        // outside the current survivors come back as isolated joiners;
        // strip them to stay within the recursion.
        let kept = run
            .set
            .members()
            .into_iter()
            .filter(|&v| survivors.contains(v));
        survivors = VertexSet::from_members(n, kept, "find_ruling_set");
        rounds += run.total_rounds();
        messages += run.messages;
        extend_trace(&mut trace, &run.trace);
        levels += 1;
    }

    // Final stage: a plain MIS on the underlying graph of the survivors.
    let (induced, _) = h.induced(&survivors);
    let underlying = induced.underlying_graph();
    let set = if underlying.edge_count() == 0 {
        let mut s = survivors.clone();
        // Relabel origin.
        s = VertexSet::from_members(n, s.members(), "find_ruling_set");
        s
    } else {
        let run = edge_partition_is(
            &underlying,
            1,
            1,
            stream_seed(seed, StreamDomain::Level, u64::from(u32::MAX)),
        )?;
        rounds += run.total_rounds();
        messages += run.messages;
        extend_trace(&mut trace, &run.trace);
        let kept = run
            .set
            .members()
            .into_iter()
            .filter(|&v| survivors.contains(v));
        VertexSet::from_members(n, kept, "find_ruling_set")
    };

    Ok(RulingSetRun {
        set,
        levels,
        rounds,
        messages,
        trace,
    })
}
