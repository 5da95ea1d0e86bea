//! Deterministic (alpha, beta) independent sets via defective coloring.
//!
//! Two stages: color the hypergraph so that no edge holds more than
//! `beta - alpha + 1` vertices of one color, then sweep the color classes
//! in order. An active vertex joins exactly when every incident edge still
//! has fewer than alpha members in the set; the defect bound keeps any
//! edge from ever exceeding beta.

use std::sync::Arc;

use crate::coloring::{defective_color, extend_trace, PhaseStats};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::localsim::{
    run_sync_observed, NodeContext, NodeProgram, NodeView, RoundTrace, SimOptions, Transition,
};
use crate::rng::NodeRng;

use super::{check_alpha_beta, AlgoError};

/// Outcome of one independent-set construction.
#[derive(Debug, Clone)]
pub struct IsRun {
    pub set: VertexSet,
    /// Rounds spent producing the defective coloring.
    pub coloring_rounds: usize,
    /// Rounds spent sweeping the color classes.
    pub selection_rounds: usize,
    pub messages: u64,
    /// Round-by-round counters across both stages.
    pub trace: Vec<RoundTrace>,
    /// Set membership after each selection round, when history was
    /// requested: `history[t][v]` holds after round `t+1`.
    pub membership_history: Option<Vec<Vec<bool>>>,
}

impl IsRun {
    pub fn total_rounds(&self) -> usize {
        self.coloring_rounds + self.selection_rounds
    }
}

#[derive(Debug, Clone)]
struct Joined;

struct SelectionProgram {
    colors: Arc<Vec<u32>>,
    alpha: usize,
}

#[derive(Debug)]
struct SelectionState {
    my_class: u32,
    /// Set members seen so far in each incident edge, aligned with the
    /// context's incident-edge order.
    counts: Vec<usize>,
}

impl NodeProgram for SelectionProgram {
    type State = SelectionState;
    type Msg = Joined;
    type Output = bool;

    fn init(
        &self,
        ctx: &NodeContext<'_, Joined>,
        _: &mut NodeRng,
    ) -> Transition<SelectionState, Joined, bool> {
        if ctx.incident.is_empty() {
            // No edge can ever reach alpha for an isolated vertex; it joins
            // unconditionally and is satisfied by membership.
            return Transition::halt(
                SelectionState {
                    my_class: 0,
                    counts: Vec::new(),
                },
                true,
            );
        }
        Transition::carry_on(SelectionState {
            my_class: self.colors[ctx.vertex as usize],
            counts: vec![0; ctx.incident.len()],
        })
    }

    fn step(
        &self,
        mut state: SelectionState,
        ctx: &NodeContext<'_, Joined>,
        _: &mut NodeRng,
    ) -> Transition<SelectionState, Joined, bool> {
        for &(sender, Joined) in ctx.inbox {
            for (slot, count) in state.counts.iter_mut().enumerate() {
                if ctx.edge_contains(slot, sender) {
                    *count += 1;
                }
            }
        }
        if ctx.round == state.my_class as usize {
            // Strictly fewer than alpha everywhere, else some edge already
            // satisfies this vertex.
            let joins = state.counts.iter().all(|&c| c < self.alpha);
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

/// Construct an (alpha, beta)-IS deterministically. The seed is passed
/// through to the simulator for interface uniformity, but neither stage's
/// program draws randomness: identical inputs give identical sets for any
/// seed.
///
/// With `alpha == beta == k` the slack is 1, the coloring is proper, and
/// the sweep degenerates to the greedy class-by-class construction of a
/// k-weak MIS.
pub fn edge_partition_is(
    h: &Hypergraph,
    alpha: usize,
    beta: usize,
    seed: u64,
) -> Result<IsRun, AlgoError> {
    edge_partition_run(h, alpha, beta, seed, false)
}

/// As [`edge_partition_is`], recording set membership after every
/// selection round for trace-level assertions.
pub fn edge_partition_is_with_history(
    h: &Hypergraph,
    alpha: usize,
    beta: usize,
    seed: u64,
) -> Result<IsRun, AlgoError> {
    edge_partition_run(h, alpha, beta, seed, true)
}

fn edge_partition_run(
    h: &Hypergraph,
    alpha: usize,
    beta: usize,
    seed: u64,
    with_history: bool,
) -> Result<IsRun, AlgoError> {
    let n = h.vertex_count();
    if h.edge_count() == 0 {
        // Nothing constrains anybody; everyone joins.
        return Ok(IsRun {
            set: VertexSet::full(n, "edge_partition_is"),
            coloring_rounds: 0,
            selection_rounds: 0,
            messages: 0,
            trace: Vec::new(),
            membership_history: with_history.then(Vec::new),
        });
    }
    check_alpha_beta(alpha, beta, h.rank())?;
    let slack = beta - alpha + 1;

    let coloring_run = defective_color(h, slack, seed)?;
    let palette = coloring_run.coloring.palette_size() as usize;
    let program = SelectionProgram {
        colors: Arc::new(coloring_run.coloring.colors().to_vec()),
        alpha,
    };

    let mut history: Vec<Vec<bool>> = Vec::new();
    let report = run_sync_observed(
        h,
        &program,
        seed,
        SimOptions::bounded(palette + 1),
        |round, views: &[NodeView<'_, SelectionProgram>]| {
            if with_history && round > 0 {
                history.push(
                    views
                        .iter()
                        .map(|view| matches!(view, NodeView::Halted(true)))
                        .collect(),
                );
            }
        },
    )?;

    let members = report
        .outputs
        .iter()
        .enumerate()
        .filter(|(_, &joined)| joined)
        .map(|(v, _)| v as u32);
    let mut stats = coloring_run.stats;
    stats.add(PhaseStats {
        rounds: report.rounds,
        messages: report.total_messages(),
    });
    let mut trace = coloring_run.trace;
    extend_trace(&mut trace, &report.round_trace());
    Ok(IsRun {
        set: VertexSet::from_members(n, members, "edge_partition_is"),
        coloring_rounds: coloring_run.stats.rounds,
        selection_rounds: report.rounds,
        messages: stats.messages,
        trace,
        membership_history: with_history.then_some(history),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexId;
    use crate::verify::{is_alpha_beta, is_k_weak_maximal, AlphaBetaMode};

    fn hyper(n: usize, edges: &[&[VertexId]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_edge_hand_run() {
        // One edge of four vertices, alpha=1, beta=2: exactly two join, the
        // class-1 pair, and both constraints hold.
        let h = hyper(4, &[&[0, 1, 2, 3]]);
        let run = edge_partition_is(&h, 1, 2, 0).unwrap();
        let inside = run.set.count_in(h.edge(0));
        assert_eq!(inside, 2);
        assert!(is_alpha_beta(&h, &run.set, 1, 2, AlphaBetaMode::Disjunctive).pass);
    }

    #[test]
    fn equal_parameters_give_a_k_weak_mis() {
        let h = hyper(6, &[&[0, 1, 2, 3], &[2, 3, 4, 5], &[0, 4, 5, 1]]);
        for k in 1..=3 {
            let run = edge_partition_is(&h, k, k, 0).unwrap();
            assert!(is_k_weak_maximal(&h, &run.set, k).pass, "k={k}");
        }
    }

    #[test]
    fn edgeless_hypergraph_selects_everything() {
        let h = Hypergraph::edgeless(7);
        let run = edge_partition_is(&h, 3, 5, 0).unwrap();
        assert_eq!(run.set.len(), 7);
        assert_eq!(run.total_rounds(), 0);
    }

    #[test]
    fn parameter_validation() {
        let h = hyper(4, &[&[0, 1, 2, 3]]);
        assert!(edge_partition_is(&h, 0, 2, 0).is_err());
        assert!(edge_partition_is(&h, 3, 2, 0).is_err());
        assert!(edge_partition_is(&h, 1, 4, 0).is_err());
    }

    #[test]
    fn history_never_exceeds_beta() {
        let h = hyper(8, &[&[0, 1, 2, 3, 4], &[3, 4, 5, 6, 7], &[0, 2, 4, 6, 7]]);
        let (alpha, beta) = (2, 3);
        let run = edge_partition_is_with_history(&h, alpha, beta, 1).unwrap();
        let history = run.membership_history.as_ref().unwrap();
        assert_eq!(history.len(), run.selection_rounds);
        for snapshot in history {
            for edge in h.edges() {
                let inside = edge.iter().filter(|&&v| snapshot[v as usize]).count();
                assert!(inside <= beta);
            }
        }
        assert!(is_alpha_beta(&h, &run.set, alpha, beta, AlphaBetaMode::Disjunctive).pass);
    }

    #[test]
    fn isolated_vertices_join() {
        let h = hyper(5, &[&[0, 1, 2]]);
        let run = edge_partition_is(&h, 1, 2, 0).unwrap();
        assert!(run.set.contains(3) && run.set.contains(4));
    }

    #[test]
    fn selection_program_passes_the_locality_audit() {
        let h = hyper(8, &[&[0, 1, 2, 3, 4], &[3, 4, 5, 6, 7], &[0, 2, 4, 6, 7]]);
        let coloring = defective_color(&h, 2, 1).unwrap();
        let program = SelectionProgram {
            colors: Arc::new(coloring.coloring.colors().to_vec()),
            alpha: 2,
        };
        let budget = coloring.coloring.palette_size() as usize + 1;
        assert!(crate::localsim::locality_audit(&h, &program, 5, budget).unwrap());
    }

    #[test]
    fn terminal_state_satisfies_the_disjunction() {
        let h = hyper(
            9,
            &[&[0, 1, 2, 3], &[2, 3, 4, 5], &[4, 5, 6, 7], &[6, 7, 8, 0]],
        );
        let run = edge_partition_is(&h, 1, 3, 7).unwrap();
        for v in 0..9u32 {
            let in_set = run.set.contains(v);
            let sees_alpha = h
                .incident_edges(v)
                .iter()
                .any(|&e| run.set.count_in(h.edge(e as usize)) >= 1);
            assert!(in_set || sees_alpha, "vertex {v}");
        }
    }
}
