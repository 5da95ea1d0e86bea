//! Seeded random hypergraph generation by rejection sampling.

use rand::Rng;

use crate::rng::{stream_rng, StreamDomain};

use super::{Hypergraph, HypergraphError, VertexId};

/// Attempts allowed per target edge before generation gives up.
const ATTEMPTS_PER_EDGE: usize = 1000;
/// Consecutive rejected proposals before an already-accepted edge is
/// backtracked to unstick the endgame.
const STALL_LIMIT: usize = 200;

/// Parameters for [`generate`].
///
/// `max_degree` and `lambda` are caps: the output never exceeds them. The
/// target edge count is the degree budget `n * max_degree / rank` minus a
/// `max_degree - 1` edge headroom: the headroom keeps at least `rank`
/// vertices under the degree cap while the last edge is being placed, so
/// the tail of the sampling stays feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Edge size when `uniform`; otherwise the maximum edge size.
    pub rank: usize,
    pub max_degree: usize,
    pub uniform: bool,
    /// Optional cap on the pairwise intersection of any two edges.
    pub lambda: Option<usize>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), HypergraphError> {
        if self.rank < 1 {
            return Err(HypergraphError::InfeasibleConfig(
                "rank must be at least 1".into(),
            ));
        }
        if self.n < self.rank {
            return Err(HypergraphError::InfeasibleConfig(format!(
                "rank {} exceeds vertex count {}",
                self.rank, self.n
            )));
        }
        if self.max_degree < 1 {
            return Err(HypergraphError::InfeasibleConfig(
                "max degree must be at least 1".into(),
            ));
        }
        if self.lambda == Some(0) {
            return Err(HypergraphError::InfeasibleConfig(
                "lambda must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn target_edges(&self) -> usize {
        (self.n * self.max_degree / self.rank)
            .saturating_sub(self.max_degree - 1)
            .max(1)
    }
}

/// Generate a hypergraph honoring the config caps, deterministically in the
/// seed.
///
/// Proposals draw edge members uniformly from the vertices that still have
/// spare degree; a proposal is rejected when it repeats an existing edge or
/// violates the lambda cap. If proposals stall, one accepted edge is
/// removed and sampling continues, all within a fixed total attempt budget.
pub fn generate(cfg: &GeneratorConfig) -> Result<Hypergraph, HypergraphError> {
    cfg.validate()?;
    let target = cfg.target_edges();
    let budget = ATTEMPTS_PER_EDGE * target;
    let mut rng = stream_rng(cfg.seed, StreamDomain::Generator, 0);

    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(target);
    let mut degree = vec![0usize; cfg.n];
    let mut stalled = 0usize;

    let mut attempts = 0usize;
    while edges.len() < target {
        if attempts >= budget {
            return Err(HypergraphError::InfeasibleConfig(format!(
                "attempt budget {budget} exhausted with {}/{target} edges placed",
                edges.len()
            )));
        }
        attempts += 1;

        let size = if cfg.uniform {
            cfg.rank
        } else {
            rng.random_range(1..=cfg.rank)
        };
        let pool: Vec<VertexId> = (0..cfg.n as VertexId)
            .filter(|&v| degree[v as usize] < cfg.max_degree)
            .collect();

        let accepted = if pool.len() < size {
            false
        } else {
            let picks = rand::seq::index::sample(&mut rng, pool.len(), size);
            let mut candidate: Vec<VertexId> = picks.iter().map(|i| pool[i]).collect();
            candidate.sort_unstable();
            candidate_ok(&candidate, &edges, cfg.lambda) && {
                for &v in &candidate {
                    degree[v as usize] += 1;
                }
                edges.push(candidate);
                true
            }
        };

        if accepted {
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= STALL_LIMIT && !edges.is_empty() {
                let victim = rng.random_range(0..edges.len());
                for &v in &edges[victim] {
                    degree[v as usize] -= 1;
                }
                edges.swap_remove(victim);
                stalled = 0;
            }
        }
    }

    Hypergraph::new(cfg.n, edges)
}

fn candidate_ok(candidate: &[VertexId], edges: &[Vec<VertexId>], lambda: Option<usize>) -> bool {
    for edge in edges {
        let overlap = sorted_intersection_size(candidate, edge);
        if overlap == candidate.len() && candidate.len() == edge.len() {
            return false; // duplicate edge
        }
        if let Some(cap) = lambda {
            if overlap > cap {
                return false;
            }
        }
    }
    true
}

fn sorted_intersection_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Structural validation of a generated hypergraph against its config.
pub fn validate_against(h: &Hypergraph, cfg: &GeneratorConfig) -> Result<(), HypergraphError> {
    if h.rank() > cfg.rank {
        return Err(HypergraphError::InvalidInput(format!(
            "rank {} exceeds configured {}",
            h.rank(),
            cfg.rank
        )));
    }
    if cfg.uniform && !h.is_uniform() {
        return Err(HypergraphError::InvalidInput(
            "expected uniform edges".into(),
        ));
    }
    if h.max_degree() > cfg.max_degree {
        return Err(HypergraphError::InvalidInput(format!(
            "degree {} exceeds configured {}",
            h.max_degree(),
            cfg.max_degree
        )));
    }
    if let Some(cap) = cfg.lambda {
        for i in 0..h.edge_count() {
            for j in i + 1..h.edge_count() {
                let overlap = sorted_intersection_size(h.edge(i), h.edge(j));
                if overlap > cap {
                    return Err(HypergraphError::InvalidInput(format!(
                        "edges {i} and {j} share {overlap} > lambda {cap} vertices"
                    )));
                }
            }
        }
    }
    Ok(())
}
