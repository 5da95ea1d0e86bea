//! k-weak maximal independent sets for weakness close to the rank.
//!
//! Each outer iteration partitions every edge's still-active vertices into
//! ID-ordered parts (quarters of size at most five once the active count
//! reaches `4 (r - k)`), properly colors the part hypergraph, and sweeps
//! the classes: a vertex joins when every incident edge can absorb its
//! whole class without passing `k`. An edge's saturation then either
//! absorbs the vertex or jumps far enough that its dyadic phase advances,
//! which bounds the iterations by `1 + Δ ceil(log2 r)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{extend_trace, linial_color, reduce_to_deg_plus_one};
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};
use crate::localsim::{run_sync, NodeContext, NodeProgram, RoundTrace, Transition};
use crate::rng::{stream_seed, NodeRng, StreamDomain};

use super::AlgoError;

/// Dyadic progress bucket of an edge's saturation toward `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Index(u32),
    Saturated,
}

/// The unique phase of a saturation value: zero saturation is phase 0,
/// full saturation is `Saturated`, and otherwise the phase is the `p` with
/// `(1 - 2^-p) k < sat <= (1 - 2^-(p+1)) k`. Monotone in `sat`.
pub fn phase_of(sat: usize, k: usize) -> Result<Phase, AlgoError> {
    if k == 0 || sat > k {
        return Err(AlgoError::SaturationOutOfRange { sat, k });
    }
    if sat == k {
        return Ok(Phase::Saturated);
    }
    if sat == 0 {
        return Ok(Phase::Index(0));
    }
    let (s, kk) = (sat as u128, k as u128);
    for p in 0..64u32 {
        let low = 1u128 << p;
        let high = low << 1;
        if kk * (low - 1) < s * low && s * high <= kk * (high - 1) {
            return Ok(Phase::Index(p));
        }
    }
    unreachable!("every saturation in 1..k falls in one dyadic bucket")
}

#[derive(Debug, Clone)]
pub struct KWeakRun {
    pub set: VertexSet,
    /// Outer iterations executed; at most `1 + Δ ceil(log2 r)`.
    pub iterations: usize,
    /// Per-edge saturation recorded after every iteration.
    pub saturation_history: Vec<Vec<usize>>,
    pub rounds: usize,
    pub messages: u64,
    pub trace: Vec<RoundTrace>,
}

/// Per-edge bookkeeping across iterations: saturation counts, derived
/// activity, and dyadic phases.
#[derive(Debug)]
struct EdgeLedger {
    saturation: Vec<usize>,
    k: usize,
}

impl EdgeLedger {
    fn new(edge_count: usize, k: usize) -> Self {
        EdgeLedger {
            saturation: vec![0; edge_count],
            k,
        }
    }

    fn saturated(&self, edge: usize) -> bool {
        self.saturation[edge] >= self.k
    }

    fn absorb(&mut self, edge: usize) {
        self.saturation[edge] += 1;
        debug_assert!(self.saturation[edge] <= self.k);
    }

    /// Active vertices: outside the set and not locked under a saturated
    /// edge.
    fn active_vertices(&self, h: &Hypergraph, in_set: &[bool]) -> Vec<bool> {
        (0..h.vertex_count() as VertexId)
            .map(|v| {
                !in_set[v as usize]
                    && !h
                        .incident_edges(v)
                        .iter()
                        .any(|&e| self.saturated(e as usize))
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Joined;

struct ClassSweepProgram {
    colors: Arc<Vec<u32>>,
    active: Arc<Vec<bool>>,
    start_saturation: Arc<Vec<usize>>,
    k: usize,
}

#[derive(Debug)]
struct SweepState {
    my_class: u32,
    /// Per incident edge: saturation as currently known.
    saturation: Vec<usize>,
    /// Per incident edge: active members sharing this vertex's class,
    /// fixed at iteration start.
    class_members: Vec<usize>,
}

impl NodeProgram for ClassSweepProgram {
    type State = SweepState;
    type Msg = Joined;
    type Output = bool;

    fn init(
        &self,
        ctx: &NodeContext<'_, Joined>,
        _: &mut NodeRng,
    ) -> Transition<SweepState, Joined, bool> {
        if !self.active[ctx.vertex as usize] {
            return Transition::halt(
                SweepState {
                    my_class: 0,
                    saturation: Vec::new(),
                    class_members: Vec::new(),
                },
                false,
            );
        }
        let my_class = self.colors[ctx.vertex as usize];
        let saturation = ctx
            .incident
            .iter()
            .map(|edge| self.start_saturation[edge.index as usize])
            .collect();
        let class_members = ctx
            .incident
            .iter()
            .map(|edge| {
                edge.members
                    .iter()
                    .filter(|&&u| self.active[u as usize] && self.colors[u as usize] == my_class)
                    .count()
            })
            .collect();
        Transition::carry_on(SweepState {
            my_class,
            saturation,
            class_members,
        })
    }

    fn step(
        &self,
        mut state: SweepState,
        ctx: &NodeContext<'_, Joined>,
        _: &mut NodeRng,
    ) -> Transition<SweepState, Joined, bool> {
        for &(sender, Joined) in ctx.inbox {
            for (slot, sat) in state.saturation.iter_mut().enumerate() {
                if ctx.edge_contains(slot, sender) {
                    *sat += 1;
                }
            }
        }
        if ctx.round == state.my_class as usize {
            // Even if every same-class active member of the edge joins with
            // us this round, the edge must stay within k.
            let joins = state
                .saturation
                .iter()
                .zip(&state.class_members)
                .all(|(&sat, &class)| sat + class <= self.k);
            let t = Transition::halt(state, joins);
            if joins {
                t.broadcast(Joined)
            } else {
                t
            }
        } else {
            Transition::carry_on(state)
        }
    }
}

/// Split the active members of one edge into ID-ordered parts: quarters
/// (size at most five) once at least `4 (rank - k)` are active, otherwise
/// one whole part.
fn partition_active(active_members: &[VertexId], rank: usize, k: usize) -> Vec<Vec<VertexId>> {
    let threshold = 4 * (rank - k);
    if active_members.len() >= threshold && active_members.len() >= 4 {
        let parts = active_members.len() / 4;
        let base = active_members.len() / parts;
        let remainder = active_members.len() % parts;
        let mut out = Vec::with_capacity(parts);
        let mut start = 0;
        for i in 0..parts {
            let size = base + usize::from(i < remainder);
            out.push(active_members[start..start + size].to_vec());
            start += size;
        }
        out
    } else {
        vec![active_members.to_vec()]
    }
}

/// Compute a k-weak MIS of a uniform hypergraph.
pub fn k_weak_mis_large_k(h: &Hypergraph, k: usize, seed: u64) -> Result<KWeakRun, AlgoError> {
    let n = h.vertex_count();
    if h.edge_count() == 0 {
        return Ok(KWeakRun {
            set: VertexSet::full(n, "k_weak_mis_large_k"),
            iterations: 0,
            saturation_history: Vec::new(),
            rounds: 0,
            messages: 0,
            trace: Vec::new(),
        });
    }
    if !h.is_uniform() {
        return Err(AlgoError::NonUniform);
    }
    let rank = h.rank();
    if k < 1 || k >= rank {
        return Err(AlgoError::BadWeakness { k, rank });
    }

    let log_rank = usize::try_from(rank.next_power_of_two().trailing_zeros()).unwrap();
    let budget = 1 + h.max_degree() * log_rank;

    let mut in_set = vec![false; n];
    let mut ledger = EdgeLedger::new(h.edge_count(), k);
    let mut history = Vec::new();
    let mut rounds = 0usize;
    let mut messages = 0u64;
    let mut trace: Vec<RoundTrace> = Vec::new();
    let mut iterations = 0usize;

    loop {
        let active = ledger.active_vertices(h, &in_set);
        let settled = active.iter().all(|&a| !a);
        if settled {
            break;
        }
        if iterations >= budget {
            return Err(AlgoError::IterationBudgetOverrun { budget });
        }
        iterations += 1;

        // Part hypergraph over this iteration's active vertices.
        let mut parts = Vec::new();
        for edge in h.edges() {
            let active_members: Vec<VertexId> = edge
                .iter()
                .copied()
                .filter(|&v| active[v as usize])
                .collect();
            if !active_members.is_empty() {
                parts.extend(partition_active(&active_members, rank, k));
            }
        }
        let part_hypergraph = Hypergraph::new(n, parts).expect("parts are valid edges");

        let iteration_seed = stream_seed(seed, StreamDomain::Level, iterations as u64);
        let first = linial_color(&part_hypergraph, iteration_seed)?;
        let reduced = reduce_to_deg_plus_one(&part_hypergraph, &first.coloring)?;
        rounds += first.stats.rounds + reduced.stats.rounds;
        messages += first.stats.messages + reduced.stats.messages;
        extend_trace(&mut trace, &first.trace);
        extend_trace(&mut trace, &reduced.trace);

        let palette = reduced.coloring.palette_size() as usize;
        let palette_bound = if rank - k >= 2 {
            4 * h.max_degree() * (rank - k) + 1
        } else {
            4 * h.max_degree() + 1
        };
        assert!(
            palette <= palette_bound,
            "part palette {palette} exceeded bound {palette_bound}"
        );

        let program = ClassSweepProgram {
            colors: Arc::new(reduced.coloring.colors().to_vec()),
            active: Arc::new(active),
            start_saturation: Arc::new(ledger.saturation.clone()),
            k,
        };
        let report = run_sync(h, &program, iteration_seed, palette + 1)?;
        rounds += report.rounds;
        messages += report.total_messages();
        extend_trace(&mut trace, &report.round_trace());

        for (v, &joined) in report.outputs.iter().enumerate() {
            if joined {
                in_set[v] = true;
                for &e in h.incident_edges(v as VertexId) {
                    ledger.absorb(e as usize);
                }
            }
        }
        history.push(ledger.saturation.clone());
    }

    let members = (0..n as VertexId).filter(|&v| in_set[v as usize]);
    Ok(KWeakRun {
        set: VertexSet::from_members(n, members, "k_weak_mis_large_k"),
        iterations,
        saturation_history: history,
        rounds,
        messages,
        trace,
    })
}
