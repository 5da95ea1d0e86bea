//! Exact local-checkability predicates for every output object.
//!
//! Each checker returns a [`CheckReport`] listing the violating vertices
//! and edges. [`brute_force_search`] enumerates all subsets of a small
//! instance through a second, independently coded evaluation of the same
//! predicates, so checker and enumeration can validate each other.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Coloring;
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("instance too large for exhaustive search: {n} vertices (limit {limit})")]
    InstanceTooLarge { n: usize, limit: usize },
}

/// A violating vertex or edge together with the predicate it violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Edge { edge: usize, violated: String },
    Vertex { vertex: VertexId, violated: String },
}

/// Outcome of a checker run; `pass` holds exactly when `witnesses` is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        CheckReport {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Which universal condition `is_alpha_beta` applies to vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaBetaMode {
    /// Each vertex is in the set or sees an edge with at least alpha
    /// members in the set.
    #[default]
    Disjunctive,
    /// Every vertex, member or not, must see an edge with at least alpha
    /// members in the set.
    StrictLiteral,
}

/// Pass iff every edge holds at most `k` members of `set`.
pub fn is_k_weak(h: &Hypergraph, set: &VertexSet, k: usize) -> CheckReport {
    let mut witnesses = Vec::new();
    for (index, edge) in h.edges().iter().enumerate() {
        let inside = set.count_in(edge);
        if inside > k {
            witnesses.push(Witness::Edge {
                edge: index,
                violated: format!("edge holds {inside} > {k} set members"),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff the set is k-weak and every vertex outside it lies in some
/// edge holding exactly `k` set members.
pub fn is_k_weak_maximal(h: &Hypergraph, set: &VertexSet, k: usize) -> CheckReport {
    let mut witnesses = is_k_weak(h, set, k).witnesses;
    for v in 0..h.vertex_count() as VertexId {
        if set.contains(v) {
            continue;
        }
        let saturated = h
            .incident_edges(v)
            .iter()
            .any(|&e| set.count_in(h.edge(e as usize)) == k);
        if !saturated {
            witnesses.push(Witness::Vertex {
                vertex: v,
                violated: format!("vertex outside the set sees no edge with {k} set members"),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff every edge holds at most `beta` set members and the per-vertex
/// alpha condition holds under `mode`.
pub fn is_alpha_beta(
    h: &Hypergraph,
    set: &VertexSet,
    alpha: usize,
    beta: usize,
    mode: AlphaBetaMode,
) -> CheckReport {
    let mut witnesses = Vec::new();
    for (index, edge) in h.edges().iter().enumerate() {
        let inside = set.count_in(edge);
        if inside > beta {
            witnesses.push(Witness::Edge {
                edge: index,
                violated: format!("edge holds {inside} > beta={beta} set members"),
            });
        }
    }
    for v in 0..h.vertex_count() as VertexId {
        if mode == AlphaBetaMode::Disjunctive && set.contains(v) {
            continue;
        }
        let covered = h
            .incident_edges(v)
            .iter()
            .any(|&e| set.count_in(h.edge(e as usize)) >= alpha);
        if !covered {
            witnesses.push(Witness::Vertex {
                vertex: v,
                violated: format!("vertex sees no edge with at least alpha={alpha} set members"),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff members are pairwise at distance at least `a` and every vertex
/// is within distance `b` of a member.
pub fn is_ruling_set(h: &Hypergraph, set: &VertexSet, a: usize, b: usize) -> CheckReport {
    let mut witnesses = Vec::new();
    let members = set.members();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if let Some(d) = h.distance(u, v) {
                if d < a {
                    witnesses.push(Witness::Vertex {
                        vertex: v,
                        violated: format!("members {u} and {v} are at distance {d} < {a}"),
                    });
                }
            }
        }
    }
    let dist = h.distances_from_set(set);
    for (v, &d) in dist.iter().enumerate() {
        if d > b {
            witnesses.push(Witness::Vertex {
                vertex: v as VertexId,
                violated: format!("vertex is farther than {b} from every member"),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff no two vertices sharing an edge have equal colors.
pub fn is_proper_coloring(h: &Hypergraph, coloring: &Coloring) -> CheckReport {
    let mut witnesses = Vec::new();
    for (index, edge) in h.edges().iter().enumerate() {
        for i in 0..edge.len() {
            for j in i + 1..edge.len() {
                if coloring.color(edge[i]) == coloring.color(edge[j]) {
                    witnesses.push(Witness::Edge {
                        edge: index,
                        violated: format!(
                            "vertices {} and {} share color {}",
                            edge[i],
                            edge[j],
                            coloring.color(edge[i])
                        ),
                    });
                }
            }
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff within every edge no color appears more than `defect` times.
pub fn is_defective_coloring(h: &Hypergraph, coloring: &Coloring, defect: usize) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut counts = vec![0usize; coloring.palette_size() as usize + 1];
    for (index, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            counts[coloring.color(v) as usize] += 1;
        }
        for &v in edge {
            let c = coloring.color(v) as usize;
            if counts[c] > defect {
                witnesses.push(Witness::Edge {
                    edge: index,
                    violated: format!("color {c} appears {} > {defect} times", counts[c]),
                });
                counts[c] = 0; // report each color once per edge
            }
        }
        for &v in edge {
            counts[coloring.color(v) as usize] = 0;
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Pass iff the edges of `matching` are pairwise disjoint and every edge of
/// `h` intersects one of them.
pub fn is_maximal_matching(h: &Hypergraph, matching: &[usize]) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut covered = vec![false; h.vertex_count()];
    for &m in matching {
        for &v in h.edge(m) {
            if covered[v as usize] {
                witnesses.push(Witness::Edge {
                    edge: m,
                    violated: format!("matched edges overlap on vertex {v}"),
                });
            }
        }
        for &v in h.edge(m) {
            covered[v as usize] = true;
        }
    }
    for (index, edge) in h.edges().iter().enumerate() {
        if !edge.iter().any(|&v| covered[v as usize]) {
            witnesses.push(Witness::Edge {
                edge: index,
                violated: "edge is disjoint from every matched edge".into(),
            });
        }
    }
    CheckReport::from_witnesses(witnesses)
}

/// Predicates available to [`brute_force_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForcePredicate {
    KWeakMis {
        k: usize,
    },
    AlphaBeta {
        alpha: usize,
        beta: usize,
        mode: AlphaBetaMode,
    },
}

const BRUTE_FORCE_LIMIT: usize = 20;

/// Enumerate all vertex subsets satisfying the predicate. Guarded to
/// instances with at most 20 vertices. The evaluation here is coded
/// independently of the witness-collecting checkers above.
pub fn brute_force_search(
    h: &Hypergraph,
    predicate: BruteForcePredicate,
) -> Result<Vec<VertexSet>, VerifyError> {
    let n = h.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(VerifyError::InstanceTooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if naive_satisfies(h, mask, predicate) {
            found.push(VertexSet::from_bitmask(n, mask, "brute_force_search"));
        }
    }
    Ok(found)
}

/// Naive predicate evaluation over a bitmask; deliberately written as
/// direct set arithmetic rather than reusing the checkers.
pub fn naive_satisfies(h: &Hypergraph, mask: u64, predicate: BruteForcePredicate) -> bool {
    let edge_masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |acc, &v| acc | 1 << v))
        .collect();
    match predicate {
        BruteForcePredicate::KWeakMis { k } => {
            if edge_masks
                .iter()
                .any(|&em| (em & mask).count_ones() as usize > k)
            {
                return false;
            }
            for v in 0..h.vertex_count() {
                if mask >> v & 1 == 1 {
                    continue;
                }
                let ok = edge_masks
                    .iter()
                    .any(|&em| em >> v & 1 == 1 && (em & mask).count_ones() as usize == k);
                if !ok {
                    return false;
                }
            }
            true
        }
        BruteForcePredicate::AlphaBeta { alpha, beta, mode } => {
            if edge_masks
                .iter()
                .any(|&em| (em & mask).count_ones() as usize > beta)
            {
                return false;
            }
            for v in 0..h.vertex_count() {
                if mode == AlphaBetaMode::Disjunctive && mask >> v & 1 == 1 {
                    continue;
                }
                let ok = edge_masks
                    .iter()
                    .any(|&em| em >> v & 1 == 1 && (em & mask).count_ones() as usize >= alpha);
                if !ok {
                    return false;
                }
            }
            true
        }
    }
}
