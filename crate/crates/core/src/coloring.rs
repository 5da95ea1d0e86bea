//! Distributed coloring subroutines.
//!
//! Three pieces build on each other: an iterated palette-reduction program
//! that properly colors the underlying graph starting from vertex IDs, a
//! greedy recoloring sweep over color classes that brings any proper
//! coloring down to a (deg+1) palette, and a defective edge coloring that
//! splits every edge into ID-ordered groups and properly colors the group
//! hypergraph.

use std::sync::Arc;

use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexId};
use crate::localsim::{
    run_sync, NodeContext, NodeProgram, RoundTrace, SimError, Transition, DEFAULT_MAX_ROUNDS,
};
use crate::rng::NodeRng;
use crate::verify;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("input coloring is not proper on the underlying graph")]
    NotProper,
    #[error("defect {defect} out of range 1..={rank}")]
    DefectOutOfRange { defect: usize, rank: usize },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// What a coloring claims about itself; validated by the checkers in
/// [`crate::verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringKind {
    /// No two vertices sharing an edge have equal colors.
    ProperOnUnderlying,
    /// No color appears more than the defect within any single edge.
    Defective(usize),
}

/// A total vertex-to-color assignment with colors in `1..=palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    palette_size: u32,
    kind: ColoringKind,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, kind: ColoringKind) -> Self {
        assert!(colors.iter().all(|&c| c >= 1), "colors are 1-based");
        let palette_size = colors.iter().copied().max().unwrap_or(1);
        Coloring {
            colors,
            palette_size,
            kind,
        }
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn kind(&self) -> ColoringKind {
        self.kind
    }
}

/// Rounds and messages spent by one coloring phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseStats {
    pub rounds: usize,
    pub messages: u64,
}

impl PhaseStats {
    pub fn add(&mut self, other: PhaseStats) {
        self.rounds += other.rounds;
        self.messages += other.messages;
    }
}

/// Outcome of a coloring operation.
#[derive(Debug, Clone)]
pub struct ColoringRun {
    pub coloring: Coloring,
    pub stats: PhaseStats,
    pub trace: Vec<RoundTrace>,
}

/// Append `extra` to `trace`, renumbering rounds to follow on.
pub(crate) fn extend_trace(trace: &mut Vec<RoundTrace>, extra: &[RoundTrace]) {
    let offset = trace.len();
    trace.extend(extra.iter().map(|r| RoundTrace {
        round: offset + r.round,
        messages: r.messages,
        halted_count: r.halted_count,
    }));
}

/// One palette-reduction step: colors are read as polynomials of
/// `digits` coefficients over GF(`modulus`) and re-encoded as
/// (point, value) pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PolyStep {
    modulus: u64,
    digits: u32,
}

impl PolyStep {
    fn palette_after(&self) -> u64 {
        self.modulus * self.modulus
    }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(mut x: u64) -> u64 {
    if x < 2 {
        return 2;
    }
    while !is_prime(x) {
        x += 1;
    }
    x
}

fn integer_root_ceil(m: u64, k: u32) -> u64 {
    let mut lo = 1u64;
    let mut hi = m;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if mid.checked_pow(k).is_none_or(|p| p >= m) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Plan the reduction: from palette `m` with conflict degree `d`, keep
/// applying the best polynomial step while it shrinks the palette. Every
/// vertex can compute this schedule from global knowledge, so all vertices
/// agree on the number of rounds.
fn reduction_schedule(initial_palette: u64, degree: u64) -> Vec<PolyStep> {
    let mut schedule = Vec::new();
    let mut palette = initial_palette;
    loop {
        let mut best: Option<PolyStep> = None;
        for digits in 2..=40u32 {
            let floor = degree * (digits as u64 - 1) + 1;
            let root = integer_root_ceil(palette, digits);
            let mut q = next_prime(floor.max(root).max(2));
            while q.checked_pow(digits).is_some_and(|p| p < palette) {
                q = next_prime(q + 1);
            }
            let step = PolyStep { modulus: q, digits };
            if best.is_none_or(|b| step.palette_after() < b.palette_after()) {
                best = Some(step);
            }
        }
        match best {
            Some(step) if step.palette_after() < palette => {
                palette = step.palette_after();
                schedule.push(step);
            }
            _ => break,
        }
    }
    schedule
}

/// Evaluate the polynomial encoding of `color` (base-q digits, low digit
/// first) at `x`, all mod q.
fn poly_eval(color: u64, step: PolyStep, x: u64) -> u64 {
    let q = step.modulus;
    let mut value = 0u64;
    let mut power = 1u64;
    let mut rest = color;
    for _ in 0..step.digits {
        let coeff = rest % q;
        rest /= q;
        value = (value + coeff * power) % q;
        power = power * x % q;
    }
    value
}

struct PaletteReductionProgram {
    schedule: Arc<Vec<PolyStep>>,
}

#[derive(Debug)]
struct ReductionState {
    color: u64,
}

impl NodeProgram for PaletteReductionProgram {
    type State = ReductionState;
    type Msg = u64;
    type Output = u64;

    fn init(
        &self,
        ctx: &NodeContext<'_, u64>,
        _: &mut NodeRng,
    ) -> Transition<ReductionState, u64, u64> {
        if ctx.neighbors.is_empty() {
            // No conflicts: the smallest color is always legal.
            return Transition::halt(ReductionState { color: 0 }, 0);
        }
        let color = ctx.vertex as u64;
        if self.schedule.is_empty() {
            return Transition::halt(ReductionState { color }, color);
        }
        Transition::carry_on(ReductionState { color }).broadcast(color)
    }

    fn step(
        &self,
        state: ReductionState,
        ctx: &NodeContext<'_, u64>,
        _: &mut NodeRng,
    ) -> Transition<ReductionState, u64, u64> {
        let step = self.schedule[ctx.round - 1];
        let q = step.modulus;
        // Pick the smallest evaluation point where this vertex's polynomial
        // differs from every neighbor's. At most degree * (digits - 1)
        // points are bad, and q exceeds that, so a point exists.
        let mine: Vec<u64> = (0..q).map(|x| poly_eval(state.color, step, x)).collect();
        let mut good = vec![true; q as usize];
        for &(_, neighbor_color) in ctx.inbox {
            debug_assert_ne!(
                neighbor_color, state.color,
                "coloring stayed proper by induction"
            );
            for x in 0..q {
                if good[x as usize] && poly_eval(neighbor_color, step, x) == mine[x as usize] {
                    good[x as usize] = false;
                }
            }
        }
        let x = good
            .iter()
            .position(|&ok| ok)
            .expect("palette reduction: a collision-free point always exists")
            as u64;
        let color = x * q + mine[x as usize];
        let state = ReductionState { color };
        if ctx.round == self.schedule.len() {
            Transition::halt(state, color)
        } else {
            Transition::carry_on(ReductionState { color }).broadcast(color)
        }
    }
}

/// Properly color the underlying graph of `h` by iterated palette
/// reduction from unique IDs. The palette is at most `16 * (Δr)^2` (and at
/// most `n`); the round count grows with the iterated logarithm of the ID
/// space.
pub fn linial_color(h: &Hypergraph, seed: u64) -> Result<ColoringRun, ColoringError> {
    let n = h.vertex_count();
    if n == 0 {
        return Ok(ColoringRun {
            coloring: Coloring::new(Vec::new(), ColoringKind::ProperOnUnderlying),
            stats: PhaseStats::default(),
            trace: Vec::new(),
        });
    }
    let degree = h.underlying_max_degree() as u64;
    let schedule = Arc::new(reduction_schedule(n as u64, degree));
    let program = PaletteReductionProgram { schedule };
    let report = run_sync(h, &program, seed, DEFAULT_MAX_ROUNDS)?;

    // Outputs are 0-based; shift to the 1-based palette.
    let colors: Vec<u32> = report.outputs.iter().map(|&c| c as u32 + 1).collect();
    let coloring = Coloring::new(colors, ColoringKind::ProperOnUnderlying);
    let bound = 16 * (h.max_degree() as u64 * h.rank() as u64).pow(2);
    assert!(
        (coloring.palette_size() as u64) <= bound.max(1) || (coloring.palette_size() as usize) <= n,
        "palette reduction exceeded its bound: {} > max(16*(Δr)^2 = {}, n = {})",
        coloring.palette_size(),
        bound,
        n
    );
    Ok(ColoringRun {
        coloring,
        stats: PhaseStats {
            rounds: report.rounds,
            messages: report.total_messages(),
        },
        trace: report.round_trace(),
    })
}

struct GreedyByClassProgram {
    colors: Arc<Vec<u32>>,
}

#[derive(Debug)]
struct GreedyState {
    my_class: u32,
    taken: Vec<bool>,
}

impl NodeProgram for GreedyByClassProgram {
    type State = GreedyState;
    type Msg = u32;
    type Output = u32;

    fn init(
        &self,
        ctx: &NodeContext<'_, u32>,
        _: &mut NodeRng,
    ) -> Transition<GreedyState, u32, u32> {
        let my_class = self.colors[ctx.vertex as usize];
        let degree = ctx.neighbors.len();
        Transition::carry_on(GreedyState {
            my_class,
            taken: vec![false; degree + 2],
        })
    }

    fn step(
        &self,
        mut state: GreedyState,
        ctx: &NodeContext<'_, u32>,
        _: &mut NodeRng,
    ) -> Transition<GreedyState, u32, u32> {
        for &(_, chosen) in ctx.inbox {
            if (chosen as usize) < state.taken.len() {
                state.taken[chosen as usize] = true;
            }
        }
        if ctx.round == state.my_class as usize {
            let choice = (1..state.taken.len() as u32)
                .find(|&c| !state.taken[c as usize])
                .expect("a free color always exists in 1..=deg+1");
            Transition::halt(state, choice).broadcast(choice)
        } else {
            Transition::carry_on(state)
        }
    }
}

/// Recolor a proper coloring down to a (deg+1) palette by sweeping over the
/// input color classes: when its class is active, each vertex takes the
/// least color in `1..=deg+1` unused by already-recolored neighbors.
pub fn reduce_to_deg_plus_one(
    h: &Hypergraph,
    input: &Coloring,
) -> Result<ColoringRun, ColoringError> {
    if !verify::is_proper_coloring(h, input).pass {
        return Err(ColoringError::NotProper);
    }
    if h.vertex_count() == 0 {
        return Ok(ColoringRun {
            coloring: Coloring::new(Vec::new(), ColoringKind::ProperOnUnderlying),
            stats: PhaseStats::default(),
            trace: Vec::new(),
        });
    }
    let program = GreedyByClassProgram {
        colors: Arc::new(input.colors().to_vec()),
    };
    let report = run_sync(h, &program, 0, input.palette_size() as usize + 1)?;
    let stats = PhaseStats {
        rounds: report.rounds,
        messages: report.total_messages(),
    };
    let trace = report.round_trace();
    let coloring = Coloring::new(report.outputs, ColoringKind::ProperOnUnderlying);
    debug_assert!(verify::is_proper_coloring(h, &coloring).pass);
    assert!(
        coloring.palette_size() as usize <= h.underlying_max_degree() + 1,
        "greedy recoloring exceeded deg+1"
    );
    Ok(ColoringRun {
        coloring,
        stats,
        trace,
    })
}

/// Split `members` (sorted by ID) into `defect` consecutive groups of
/// balanced sizes; when the edge is smaller than the defect each vertex
/// forms its own group.
pub(crate) fn edge_groups(members: &[VertexId], defect: usize) -> Vec<Vec<VertexId>> {
    let groups = defect.min(members.len());
    let base = members.len() / groups;
    let remainder = members.len() % groups;
    let mut out = Vec::with_capacity(groups);
    let mut start = 0;
    for i in 0..groups {
        let size = base + usize::from(i < remainder);
        out.push(members[start..start + size].to_vec());
        start += size;
    }
    out
}

/// Build the group hypergraph used by the defective coloring: every edge
/// contributes its ID-ordered groups as new edges.
pub fn group_hypergraph(h: &Hypergraph, defect: usize) -> Hypergraph {
    let mut groups = Vec::new();
    for edge in h.edges() {
        groups.extend(edge_groups(edge, defect));
    }
    Hypergraph::new(h.vertex_count(), groups).expect("groups are valid edges")
}

/// Find a coloring in which no color appears more than `defect` times
/// within any edge: properly color the group hypergraph's underlying graph
/// and reduce to its (deg+1) palette. The palette is at most
/// `Δ * ceil(r/defect) + 1`.
pub fn defective_color(
    h: &Hypergraph,
    defect: usize,
    seed: u64,
) -> Result<ColoringRun, ColoringError> {
    let rank = h.rank();
    if rank > 0 && !(1..=rank).contains(&defect) {
        return Err(ColoringError::DefectOutOfRange { defect, rank });
    }
    if rank == 0 && defect == 0 {
        return Err(ColoringError::DefectOutOfRange { defect, rank });
    }
    let grouped = group_hypergraph(h, defect);
    let first = linial_color(&grouped, seed)?;
    let reduced = reduce_to_deg_plus_one(&grouped, &first.coloring)?;

    let mut stats = first.stats;
    stats.add(reduced.stats);
    let mut trace = first.trace;
    extend_trace(&mut trace, &reduced.trace);
    let coloring = Coloring::new(
        reduced.coloring.colors().to_vec(),
        ColoringKind::Defective(defect),
    );
    debug_assert!(verify::is_defective_coloring(h, &coloring, defect).pass);
    if rank > 0 {
        let bound = h.max_degree() * rank.div_ceil(defect) + 1;
        assert!(
            coloring.palette_size() as usize <= bound,
            "defective palette {} exceeded bound {}",
            coloring.palette_size(),
            bound
        );
    }
    Ok(ColoringRun {
        coloring,
        stats,
        trace,
    })
}
