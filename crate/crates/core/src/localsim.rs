//! Synchronous round-based message-passing simulation.
//!
//! Each vertex runs a [`NodeProgram`]: an `init` transition followed by one
//! `step` transition per round. A step sees only the vertex's 1-hop view
//! (its incident edges with full member lists) and the messages received
//! this round, and may send messages to neighbors, so all programs are
//! local by construction. Rounds are double-buffered: a message sent in
//! round `t` is readable in round `t + 1` and never earlier.
//!
//! Message accounting: each element of a transition's outbox is one send
//! call, whether addressed to one neighbor or broadcast. Sends to
//! non-neighbors are counted but never delivered. Per-vertex randomness
//! comes from streams derived from `(seed, vertex)`, so results are
//! independent of scheduling order.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexId};
use crate::par;
use crate::rng::{stream_rng, NodeRng, StreamDomain};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("round budget {max_rounds} exhausted; {} vertices still running (first: {:?})",
            non_halted.len(), non_halted.first())]
    RoundBudgetExhausted {
        max_rounds: usize,
        non_halted: Vec<VertexId>,
    },
}

/// One incident edge as seen from a vertex: its index in the hypergraph and
/// the full member list.
#[derive(Debug, Clone, Copy)]
pub struct IncidentEdge<'a> {
    pub index: u32,
    pub members: &'a [VertexId],
}

/// The 1-hop view a program transition may read.
pub struct NodeContext<'a, M> {
    pub vertex: VertexId,
    /// 0 during `init`; the 1-based round number during `step`.
    pub round: usize,
    pub incident: &'a [IncidentEdge<'a>],
    pub neighbors: &'a [VertexId],
    /// Messages received this round, ordered by sender ID.
    pub inbox: &'a [(VertexId, M)],
}

impl<'a, M> NodeContext<'a, M> {
    /// Whether the incident edge at `slot` contains `v`.
    pub fn edge_contains(&self, slot: usize, v: VertexId) -> bool {
        self.incident[slot].members.binary_search(&v).is_ok()
    }
}

/// Where to send a message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recipient {
    /// Every vertex sharing an edge with the sender.
    Neighbors,
    /// One vertex; dropped (but counted) unless it is a neighbor.
    One(VertexId),
}

#[derive(Debug, Clone)]
pub struct Outgoing<M> {
    pub to: Recipient,
    pub msg: M,
}

/// Continue into the next round or halt with a final output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Control<O> {
    Continue,
    Halt(O),
}

/// The result of an `init` or `step` call.
pub struct Transition<S, M, O> {
    pub state: S,
    pub outbox: Vec<Outgoing<M>>,
    pub control: Control<O>,
}

impl<S, M, O> Transition<S, M, O> {
    pub fn carry_on(state: S) -> Self {
        Transition {
            state,
            outbox: Vec::new(),
            control: Control::Continue,
        }
    }

    pub fn halt(state: S, output: O) -> Self {
        Transition {
            state,
            outbox: Vec::new(),
            control: Control::Halt(output),
        }
    }

    pub fn broadcast(mut self, msg: M) -> Self {
        self.outbox.push(Outgoing {
            to: Recipient::Neighbors,
            msg,
        });
        self
    }
}

/// A per-vertex state machine executed by [`run_sync`].
pub trait NodeProgram: Sync {
    type State: Send + fmt::Debug;
    type Msg: Clone + Send + Sync;
    type Output: Clone + Send + fmt::Debug;

    fn init(
        &self,
        ctx: &NodeContext<'_, Self::Msg>,
        rng: &mut NodeRng,
    ) -> Transition<Self::State, Self::Msg, Self::Output>;

    fn step(
        &self,
        state: Self::State,
        ctx: &NodeContext<'_, Self::Msg>,
        rng: &mut NodeRng,
    ) -> Transition<Self::State, Self::Msg, Self::Output>;
}

/// A vertex as visible to a per-round observer.
pub enum NodeView<'a, P: NodeProgram> {
    Running(&'a P::State),
    Halted(&'a P::Output),
}

/// Execution record of one simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimReport<O> {
    /// Number of synchronous message-exchange rounds executed.
    pub rounds: usize,
    /// Send calls per round; sends issued at init count toward round 1.
    pub messages_per_round: Vec<u64>,
    /// Vertices halted by the end of each round.
    pub halted_per_round: Vec<usize>,
    /// Final output of every vertex.
    pub outputs: Vec<O>,
    /// Per-round state snapshots (`Debug`-formatted), when requested.
    pub snapshots: Option<Vec<Vec<String>>>,
}

/// One round's externally visible counters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    pub messages: u64,
    pub halted_count: usize,
}

impl<O> SimReport<O> {
    pub fn total_messages(&self) -> u64 {
        self.messages_per_round.iter().sum()
    }

    pub fn round_trace(&self) -> Vec<RoundTrace> {
        self.messages_per_round
            .iter()
            .zip(&self.halted_per_round)
            .enumerate()
            .map(|(i, (&messages, &halted_count))| RoundTrace {
                round: i + 1,
                messages,
                halted_count,
            })
            .collect()
    }

    /// One JSON record per round: `{"round":..,"messages":..,"halted_count":..}`.
    pub fn trace_lines(&self) -> String {
        let mut out = String::new();
        for record in self.round_trace() {
            out.push_str(&serde_json::to_string(&record).expect("trace serializes"));
            out.push('\n');
        }
        out
    }
}

/// Options for a simulation run.
#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    pub max_rounds: usize,
    /// Record `Debug` snapshots of every state after every round.
    pub snapshots: bool,
}

impl SimOptions {
    pub fn bounded(max_rounds: usize) -> Self {
        SimOptions {
            max_rounds,
            snapshots: false,
        }
    }
}

/// Default round budget for drivers that know their programs terminate.
pub const DEFAULT_MAX_ROUNDS: usize = 1 << 20;

enum Slot<P: NodeProgram> {
    Running(P::State),
    Halted(P::Output),
    /// Placeholder while a state is moved out during a step; never
    /// observed across phase boundaries.
    Moved,
}

struct Cell<P: NodeProgram> {
    slot: Slot<P>,
    rng: NodeRng,
    outbox: Vec<Outgoing<P::Msg>>,
}

/// Run `program` on every vertex of `h` until all halt or the budget runs
/// out. Deterministic in `(h, program, seed)`.
pub fn run_sync<P: NodeProgram>(
    h: &Hypergraph,
    program: &P,
    seed: u64,
    max_rounds: usize,
) -> Result<SimReport<P::Output>, SimError> {
    run_sync_observed(h, program, seed, SimOptions::bounded(max_rounds), |_, _| {})
}

/// As [`run_sync`], invoking `observer(round, views)` after init (round 0)
/// and after every completed round. Used for trace-level assertions.
pub fn run_sync_observed<P, F>(
    h: &Hypergraph,
    program: &P,
    seed: u64,
    options: SimOptions,
    mut observer: F,
) -> Result<SimReport<P::Output>, SimError>
where
    P: NodeProgram,
    F: FnMut(usize, &[NodeView<'_, P>]),
{
    let n = h.vertex_count();
    let incident: Vec<Vec<IncidentEdge<'_>>> = (0..n)
        .map(|v| {
            h.incident_edges(v as VertexId)
                .iter()
                .map(|&e| IncidentEdge {
                    index: e,
                    members: h.edge(e as usize),
                })
                .collect()
        })
        .collect();

    let empty_inbox: Vec<(VertexId, P::Msg)> = Vec::new();
    let mut cells: Vec<Cell<P>> = (0..n)
        .map(|v| Cell {
            slot: Slot::Moved,
            rng: stream_rng(seed, StreamDomain::Vertex, v as u64),
            outbox: Vec::new(),
        })
        .collect();

    // Init phase (round 0).
    par::for_each_mut_indexed(&mut cells, |v, cell| {
        let ctx = NodeContext {
            vertex: v as VertexId,
            round: 0,
            incident: &incident[v],
            neighbors: h.neighbors(v as VertexId),
            inbox: &empty_inbox,
        };
        let t = program.init(&ctx, &mut cell.rng);
        cell.outbox = t.outbox;
        cell.slot = match t.control {
            Control::Continue => Slot::Running(t.state),
            Control::Halt(out) => Slot::Halted(out),
        };
    });

    let mut report = SimReport {
        rounds: 0,
        messages_per_round: Vec::new(),
        halted_per_round: Vec::new(),
        outputs: Vec::new(),
        snapshots: options.snapshots.then(Vec::new),
    };

    observe(&cells, 0, &mut observer);
    let mut pending_sends = drain_sends(&mut cells);
    let init_sends = pending_sends
        .iter()
        .map(|(_, o)| o.len() as u64)
        .sum::<u64>();
    if all_halted(&cells) {
        assert!(
            init_sends == 0,
            "a program that halts every vertex at init must not send messages"
        );
        finish(&mut report, cells);
        return Ok(report);
    }

    let mut carried_sends = init_sends;
    for round in 1..=options.max_rounds {
        // Deliver messages sent in the previous phase.
        let mut inboxes: Vec<Vec<(VertexId, P::Msg)>> = vec![Vec::new(); n];
        for (sender, outbox) in pending_sends.drain(..) {
            for out in outbox {
                match out.to {
                    Recipient::Neighbors => {
                        for &u in h.neighbors(sender) {
                            if matches!(cells[u as usize].slot, Slot::Running(_)) {
                                inboxes[u as usize].push((sender, out.msg.clone()));
                            }
                        }
                    }
                    Recipient::One(u) => {
                        let is_neighbor = h.neighbors(sender).binary_search(&u).is_ok();
                        if is_neighbor && matches!(cells[u as usize].slot, Slot::Running(_)) {
                            inboxes[u as usize].push((sender, out.msg));
                        }
                    }
                }
            }
        }

        // Step phase: all transitions computed from the previous round's
        // states before anything is delivered onward.
        par::for_each_mut_indexed(&mut cells, |v, cell| {
            let state = match std::mem::replace(&mut cell.slot, Slot::Moved) {
                Slot::Running(state) => state,
                halted @ Slot::Halted(_) => {
                    cell.slot = halted;
                    return;
                }
                Slot::Moved => unreachable!("slot left in moved state"),
            };
            let ctx = NodeContext {
                vertex: v as VertexId,
                round,
                incident: &incident[v],
                neighbors: h.neighbors(v as VertexId),
                inbox: &inboxes[v],
            };
            let t = program.step(state, &ctx, &mut cell.rng);
            cell.outbox = t.outbox;
            cell.slot = match t.control {
                Control::Continue => Slot::Running(t.state),
                Control::Halt(out) => Slot::Halted(out),
            };
        });

        pending_sends = drain_sends(&mut cells);
        let sends_this_round: u64 = pending_sends.iter().map(|(_, o)| o.len() as u64).sum();
        report.rounds = round;
        report
            .messages_per_round
            .push(carried_sends + sends_this_round);
        carried_sends = 0;
        report.halted_per_round.push(
            cells
                .iter()
                .filter(|c| matches!(c.slot, Slot::Halted(_)))
                .count(),
        );
        if let Some(snapshots) = &mut report.snapshots {
            snapshots.push(
                cells
                    .iter()
                    .map(|c| match &c.slot {
                        Slot::Running(s) => format!("{s:?}"),
                        Slot::Halted(o) => format!("halted({o:?})"),
                        Slot::Moved => unreachable!("slot left in moved state"),
                    })
                    .collect(),
            );
        }
        observe(&cells, round, &mut observer);

        if all_halted(&cells) {
            finish(&mut report, cells);
            return Ok(report);
        }
    }

    let non_halted: Vec<VertexId> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c.slot, Slot::Running(_)))
        .map(|(v, _)| v as VertexId)
        .collect();
    Err(SimError::RoundBudgetExhausted {
        max_rounds: options.max_rounds,
        non_halted,
    })
}

fn drain_sends<P: NodeProgram>(cells: &mut [Cell<P>]) -> Vec<(VertexId, Vec<Outgoing<P::Msg>>)> {
    cells
        .iter_mut()
        .enumerate()
        .filter(|(_, c)| !c.outbox.is_empty())
        .map(|(v, c)| (v as VertexId, std::mem::take(&mut c.outbox)))
        .collect()
}

fn all_halted<P: NodeProgram>(cells: &[Cell<P>]) -> bool {
    cells.iter().all(|c| matches!(c.slot, Slot::Halted(_)))
}

fn observe<P: NodeProgram, F: FnMut(usize, &[NodeView<'_, P>])>(
    cells: &[Cell<P>],
    round: usize,
    observer: &mut F,
) {
    let views: Vec<NodeView<'_, P>> = cells
        .iter()
        .map(|c| match &c.slot {
            Slot::Running(s) => NodeView::Running(s),
            Slot::Halted(o) => NodeView::Halted(o),
            Slot::Moved => unreachable!("slot left in moved state"),
        })
        .collect();
    observer(round, &views);
}

fn finish<P: NodeProgram>(report: &mut SimReport<P::Output>, cells: Vec<Cell<P>>) {
    report.outputs = cells
        .into_iter()
        .map(|c| match c.slot {
            Slot::Halted(out) => out,
            _ => unreachable!("finish called with running vertices"),
        })
        .collect();
}

/// Re-run the simulation with a sequential, seed-shuffled execution order
/// and compare outputs with the normal run. A compliant program reads only
/// its context and randomness, so outputs match; a program smuggling state
/// through shared globals is exposed by the order change.
///
/// `radius_cap` bounds the rounds of both runs (a `t`-round run depends on
/// radius-`t` neighborhoods only).
pub fn locality_audit<P: NodeProgram>(
    h: &Hypergraph,
    program: &P,
    seed: u64,
    radius_cap: usize,
) -> Result<bool, SimError>
where
    P::Output: PartialEq,
{
    let baseline = run_sync(h, program, seed, radius_cap)?;
    let shuffled = run_shuffled(h, program, seed, radius_cap)?;
    Ok(baseline.outputs == shuffled.outputs && baseline.rounds == shuffled.rounds)
}

/// Strictly sequential engine variant stepping vertices in a seed-derived
/// shuffled order each round. Functionally identical for compliant
/// programs; exists to support [`locality_audit`].
fn run_shuffled<P: NodeProgram>(
    h: &Hypergraph,
    program: &P,
    seed: u64,
    max_rounds: usize,
) -> Result<SimReport<P::Output>, SimError> {
    use rand::seq::SliceRandom;

    let n = h.vertex_count();
    let incident: Vec<Vec<IncidentEdge<'_>>> = (0..n)
        .map(|v| {
            h.incident_edges(v as VertexId)
                .iter()
                .map(|&e| IncidentEdge {
                    index: e,
                    members: h.edge(e as usize),
                })
                .collect()
        })
        .collect();
    let mut order_rng = stream_rng(seed, StreamDomain::Level, u64::MAX);
    let empty_inbox: Vec<(VertexId, P::Msg)> = Vec::new();

    let mut slots: Vec<Slot<P>> = Vec::with_capacity(n);
    let mut rngs: Vec<NodeRng> = (0..n)
        .map(|v| stream_rng(seed, StreamDomain::Vertex, v as u64))
        .collect();
    let mut outboxes: Vec<Vec<Outgoing<P::Msg>>> = vec![Vec::new(); n];

    let mut init_order: Vec<usize> = (0..n).collect();
    init_order.shuffle(&mut order_rng);
    slots.resize_with(n, || Slot::Moved);
    for &v in &init_order {
        let ctx = NodeContext {
            vertex: v as VertexId,
            round: 0,
            incident: &incident[v],
            neighbors: h.neighbors(v as VertexId),
            inbox: &empty_inbox,
        };
        let t = program.init(&ctx, &mut rngs[v]);
        outboxes[v] = t.outbox;
        slots[v] = match t.control {
            Control::Continue => Slot::Running(t.state),
            Control::Halt(out) => Slot::Halted(out),
        };
    }

    let mut rounds = 0;
    for round in 1..=max_rounds {
        if slots.iter().all(|s| matches!(s, Slot::Halted(_))) {
            break;
        }
        rounds = round;
        let mut inboxes: Vec<Vec<(VertexId, P::Msg)>> = vec![Vec::new(); n];
        let sent: Vec<(VertexId, Vec<Outgoing<P::Msg>>)> = outboxes
            .iter_mut()
            .enumerate()
            .map(|(v, outbox)| (v as VertexId, std::mem::take(outbox)))
            .collect();
        for (sender, outbox) in sent {
            for out in outbox {
                match out.to {
                    Recipient::Neighbors => {
                        for &u in h.neighbors(sender) {
                            inboxes[u as usize].push((sender, out.msg.clone()));
                        }
                    }
                    Recipient::One(u) => {
                        if h.neighbors(sender).binary_search(&u).is_ok() {
                            inboxes[u as usize].push((sender, out.msg));
                        }
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut order_rng);
        for &v in &order {
            let state = match std::mem::replace(&mut slots[v], Slot::Moved) {
                Slot::Running(state) => state,
                other => {
                    slots[v] = other;
                    continue;
                }
            };
            let ctx = NodeContext {
                vertex: v as VertexId,
                round,
                incident: &incident[v],
                neighbors: h.neighbors(v as VertexId),
                inbox: &inboxes[v],
            };
            let t = program.step(state, &ctx, &mut rngs[v]);
            outboxes[v] = t.outbox;
            slots[v] = match t.control {
                Control::Continue => Slot::Running(t.state),
                Control::Halt(out) => Slot::Halted(out),
            };
        }
    }

    if slots.iter().any(|s| matches!(s, Slot::Running(_))) {
        let non_halted = slots
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Slot::Running(_)))
            .map(|(v, _)| v as VertexId)
            .collect();
        return Err(SimError::RoundBudgetExhausted {
            max_rounds,
            non_halted,
        });
    }
    Ok(SimReport {
        rounds,
        messages_per_round: Vec::new(),
        halted_per_round: Vec::new(),
        outputs: slots
            .into_iter()
            .map(|s| match s {
                Slot::Halted(out) => out,
                _ => unreachable!(),
            })
            .collect(),
        snapshots: None,
    })
}
