//! Communication-free randomized independent sets.

use rand::Rng;

use crate::hypergraph::{Hypergraph, VertexSet};
use crate::localsim::{run_sync, NodeContext, NodeProgram, RoundTrace, Transition};
use crate::rng::NodeRng;

use super::{check_alpha_beta, AlgoError};

/// Outcome of the zero-round protocol. Validity is *not* guaranteed; the
/// caller checks the set and counts successes.
#[derive(Debug, Clone)]
pub struct ZeroRoundRun {
    pub set: VertexSet,
    /// The per-vertex join probability `(alpha + beta) / (2 * rank)`.
    pub join_probability: f64,
    pub rounds: usize,
    pub messages: u64,
    pub trace: Vec<RoundTrace>,
}

struct ZeroRoundProgram {
    join_probability: f64,
}

impl NodeProgram for ZeroRoundProgram {
    type State = ();
    type Msg = ();
    type Output = bool;

    fn init(&self, ctx: &NodeContext<'_, ()>, rng: &mut NodeRng) -> Transition<(), (), bool> {
        // A vertex with no incident edges can never see an edge reach
        // alpha, so it always joins; joining is free of constraints.
        let joins = ctx.incident.is_empty() || rng.random_bool(self.join_probability);
        Transition::halt((), joins)
    }

    fn step(&self, _: (), _: &NodeContext<'_, ()>, _: &mut NodeRng) -> Transition<(), (), bool> {
        unreachable!("zero-round program halts at init")
    }
}

/// Each vertex independently joins with probability
/// `(alpha + beta) / (2 * rank)`, with no communication at all.
pub fn zero_round_is(
    h: &Hypergraph,
    alpha: usize,
    beta: usize,
    seed: u64,
) -> Result<ZeroRoundRun, AlgoError> {
    let join_probability = if h.edge_count() == 0 {
        // No constraints; every vertex is edgeless and joins anyway.
        1.0
    } else {
        check_alpha_beta(alpha, beta, h.rank())?;
        (alpha + beta) as f64 / (2.0 * h.rank() as f64)
    };
    let program = ZeroRoundProgram { join_probability };
    let report = run_sync(h, &program, seed, 0)?;
    let members = report
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, &joins)| joins)
        .map(|(v, _)| v as u32);
    Ok(ZeroRoundRun {
        set: VertexSet::from_members(h.vertex_count(), members, "zero_round_is"),
        join_probability,
        rounds: report.rounds,
        messages: report.total_messages(),
        trace: report.round_trace(),
    })
}
