//! One-shot random removal for hypergraphs of large rank.
//!
//! Every edge, acting through its minimum-ID member, removes one uniformly
//! random member from the candidate set (initially all vertices). One
//! exchange suffices: removal notices travel to the victims in a single
//! round. On hypergraphs with small pairwise edge intersections the
//! surviving per-edge counts stay large; `weakness_hint` is the analysis
//! parameter `k` in the expected floor `rank / (2k)` and plays no role in
//! the execution itself.

use rand::Rng;

use crate::hypergraph::{Hypergraph, VertexId, VertexSet};
use crate::localsim::{run_sync, NodeContext, NodeProgram, Recipient, RoundTrace, Transition};
use crate::rng::{stream_rng, NodeRng, StreamDomain};

use super::AlgoError;

#[derive(Debug, Clone)]
pub struct HighRankRun {
    pub set: VertexSet,
    /// Surviving members per edge, by edge index.
    pub survivors_per_edge: Vec<usize>,
    pub rounds: usize,
    pub messages: u64,
    pub trace: Vec<RoundTrace>,
}

#[derive(Debug, Clone)]
struct RemovalNotice {
    victim: VertexId,
}

struct RemovalProgram {
    seed: u64,
}

#[derive(Debug)]
struct RemovalState {
    /// Set when this vertex, delegating for one of its edges, drew itself;
    /// broadcasts do not loop back to the sender.
    picked_self: bool,
}

impl NodeProgram for RemovalProgram {
    type State = RemovalState;
    type Msg = RemovalNotice;
    type Output = bool;

    fn init(
        &self,
        ctx: &NodeContext<'_, RemovalNotice>,
        _: &mut NodeRng,
    ) -> Transition<RemovalState, RemovalNotice, bool> {
        if ctx.incident.is_empty() {
            return Transition::halt(RemovalState { picked_self: false }, true);
        }
        let mut t = Transition::carry_on(RemovalState { picked_self: false });
        for edge in ctx.incident {
            // The minimum-ID member acts for the edge, drawing from the
            // edge's own stream so the pick does not depend on which
            // vertex executes it.
            if edge.members[0] != ctx.vertex {
                continue;
            }
            let mut edge_rng = stream_rng(self.seed, StreamDomain::Edge, edge.index as u64);
            let victim = edge.members[edge_rng.random_range(0..edge.members.len())];
            if victim == ctx.vertex {
                t.state.picked_self = true;
            }
            t.outbox.push(crate::localsim::Outgoing {
                to: Recipient::Neighbors,
                msg: RemovalNotice { victim },
            });
        }
        t
    }

    fn step(
        &self,
        state: RemovalState,
        ctx: &NodeContext<'_, RemovalNotice>,
        _: &mut NodeRng,
    ) -> Transition<RemovalState, RemovalNotice, bool> {
        let removed = state.picked_self
            || ctx
                .inbox
                .iter()
                .any(|(_, notice)| notice.victim == ctx.vertex);
        Transition::halt(state, !removed)
    }
}

/// Start from all vertices and let each edge knock one random member out.
/// Requires a uniform hypergraph. Runs in one simulated round.
pub fn high_rank_remove(
    h: &Hypergraph,
    weakness_hint: usize,
    seed: u64,
) -> Result<HighRankRun, AlgoError> {
    if !h.is_uniform() {
        return Err(AlgoError::NonUniform);
    }
    if weakness_hint < 1 {
        return Err(AlgoError::BadWeakness {
            k: weakness_hint,
            rank: h.rank(),
        });
    }
    let report = run_sync(h, &RemovalProgram { seed }, seed, 2)?;
    let members = report
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, &stays)| stays)
        .map(|(v, _)| v as u32);
    let set = VertexSet::from_members(h.vertex_count(), members, "high_rank_remove");
    let survivors_per_edge = h.edges().iter().map(|e| set.count_in(e)).collect();
    Ok(HighRankRun {
        set,
        survivors_per_edge,
        rounds: report.rounds,
        messages: report.total_messages(),
        trace: report.round_trace(),
    })
}
