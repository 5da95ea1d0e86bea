//! Independent-set, ruling-set, and matching algorithms.
//!
//! Every algorithm here is deterministic in `(hypergraph, parameters,
//! seed)` and returns, besides its output set, the simulated round and
//! message counts of its execution.

mod edge_partition;
mod high_rank;
mod k_weak;
mod lll;
mod matching;
mod ruling_set;
mod zero_round;

pub use edge_partition::{edge_partition_is, edge_partition_is_with_history, IsRun};
pub use high_rank::{high_rank_remove, HighRankRun};
pub use k_weak::{k_weak_mis_large_k, phase_of, KWeakRun, Phase};
pub use lll::{lll_feasible, moser_tardos_is, LllReport, MtOutcome};
pub use matching::{extract_maximal_matching, MatchingRun};
pub use ruling_set::{find_ruling_set, RulingSetRun};
pub use zero_round::{zero_round_is, ZeroRoundRun};

use thiserror::Error;

use crate::coloring::ColoringError;
use crate::localsim::SimError;

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error("alpha/beta out of range: alpha={alpha}, beta={beta}, rank={rank} (need 1 <= alpha <= beta < rank)")]
    BadAlphaBeta {
        alpha: usize,
        beta: usize,
        rank: usize,
    },
    #[error("k out of range: k={k}, rank={rank}")]
    BadWeakness { k: usize, rank: usize },
    #[error("operation requires a uniform hypergraph")]
    NonUniform,
    #[error("saturation {sat} out of range 0..={k}")]
    SaturationOutOfRange { sat: usize, k: usize },
    #[error("iteration budget {budget} overrun; this indicates an implementation bug")]
    IterationBudgetOverrun { budget: usize },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Common parameter block shared by the drivers and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgoParams {
    pub alpha: usize,
    pub beta: usize,
    pub k: usize,
    pub seed: u64,
    /// Resampling budget for the constructive-LLL driver.
    pub budget: u64,
}

impl AlgoParams {
    /// The slack parameter `beta - alpha + 1` driving the defective
    /// coloring partition.
    pub fn slack(&self) -> usize {
        self.beta - self.alpha + 1
    }
}

impl Default for AlgoParams {
    fn default() -> Self {
        AlgoParams {
            alpha: 1,
            beta: 1,
            k: 1,
            seed: 0,
            budget: 10_000,
        }
    }
}

pub(crate) fn check_alpha_beta(alpha: usize, beta: usize, rank: usize) -> Result<(), AlgoError> {
    if alpha < 1 || beta < alpha || beta >= rank {
        return Err(AlgoError::BadAlphaBeta { alpha, beta, rank });
    }
    Ok(())
}
