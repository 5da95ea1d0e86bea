//! Experiment grids: cells, per-cell execution, and the record format.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use weakis_core::algorithms::{
    edge_partition_is, extract_maximal_matching, find_ruling_set, high_rank_remove,
    k_weak_mis_large_k, moser_tardos_is, zero_round_is, AlgoParams,
};
use weakis_core::hypergraph::{generate, GeneratorConfig, Hypergraph};
use weakis_core::localsim::RoundTrace;
use weakis_core::rng::{stream_seed, StreamDomain};
use weakis_core::verify::{
    is_alpha_beta, is_k_weak_maximal, is_maximal_matching, is_ruling_set, AlphaBetaMode,
};

/// The algorithms the driver can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    ZeroRound,
    MoserTardos,
    HighRank,
    EdgePartition,
    RulingSet,
    KWeakMis,
    Matching,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::ZeroRound => "zero-round",
            Algo::MoserTardos => "moser-tardos",
            Algo::HighRank => "high-rank",
            Algo::EdgePartition => "edge-partition",
            Algo::RulingSet => "ruling-set",
            Algo::KWeakMis => "k-weak-mis",
            Algo::Matching => "matching",
        }
    }

    pub fn needs_alpha_beta(self) -> bool {
        matches!(
            self,
            Algo::ZeroRound | Algo::MoserTardos | Algo::EdgePartition
        )
    }

    pub fn needs_weakness(self) -> bool {
        matches!(self, Algo::HighRank | Algo::RulingSet | Algo::KWeakMis)
    }
}

/// One grid cell: the instance shape plus the algorithm parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellConfig {
    pub algo: String,
    pub n: usize,
    pub r: usize,
    pub delta_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
    pub uniform: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

/// A full sweep: the cell grid plus trial counts and seeding.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub algo: Algo,
    pub cells: Vec<CellConfig>,
    pub trials: u64,
    pub base_seed: u64,
    pub budget: u64,
    pub strict_alpha_beta: bool,
}

impl ExperimentSpec {
    /// Cartesian product of the per-parameter value lists.
    #[allow(clippy::too_many_arguments)]
    pub fn grid(
        algo: Algo,
        ns: &[usize],
        rs: &[usize],
        deltas: &[usize],
        lambdas: &[Option<usize>],
        alphas: &[Option<usize>],
        betas: &[Option<usize>],
        ks: &[Option<usize>],
        uniform: bool,
        trials: u64,
        base_seed: u64,
        budget: u64,
        strict_alpha_beta: bool,
    ) -> Result<Self> {
        if trials < 1 {
            bail!("trials must be at least 1");
        }
        let mut cells = Vec::new();
        for &n in ns {
            for &r in rs {
                for &delta_max in deltas {
                    for &lambda in lambdas {
                        for &alpha in alphas {
                            for &beta in betas {
                                for &k in ks {
                                    cells.push(CellConfig {
                                        algo: algo.name().to_string(),
                                        n,
                                        r,
                                        delta_max,
                                        lambda,
                                        uniform,
                                        alpha,
                                        beta,
                                        k,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        if cells.is_empty() {
            bail!("empty grid");
        }
        Ok(ExperimentSpec {
            algo,
            cells,
            trials,
            base_seed,
            budget,
            strict_alpha_beta,
        })
    }
}

/// One record per cell and trial, written as JSON lines.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub cell: CellConfig,
    pub trial: u64,
    pub gen_seed: u64,
    pub seed: u64,
    pub valid: bool,
    pub rounds: u64,
    pub messages: u64,
    pub set_size: usize,
    pub set: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resamples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Output of one algorithm execution on one instance.
pub struct AlgoRun {
    pub set: Vec<u32>,
    pub valid: bool,
    pub rounds: u64,
    pub messages: u64,
    pub resamples: Option<u64>,
    pub trace: Vec<RoundTrace>,
}

fn alpha_beta_mode(strict: bool) -> AlphaBetaMode {
    if strict {
        AlphaBetaMode::StrictLiteral
    } else {
        AlphaBetaMode::Disjunctive
    }
}

/// Assemble the shared parameter block, defaulting the axes an algorithm
/// does not read.
pub fn build_params(
    algo: Algo,
    alpha: Option<usize>,
    beta: Option<usize>,
    k: Option<usize>,
    seed: u64,
    budget: u64,
) -> Result<AlgoParams> {
    let need = |value: Option<usize>, name: &str| {
        value.with_context(|| format!("{} requires --{name}", algo.name()))
    };
    let mut params = AlgoParams {
        seed,
        budget,
        ..AlgoParams::default()
    };
    if algo.needs_alpha_beta() {
        params.alpha = need(alpha, "alpha")?;
        params.beta = need(beta, "beta")?;
    }
    if algo.needs_weakness() {
        params.k = need(k, "k")?;
    }
    Ok(params)
}

/// Run one algorithm on one instance; the `valid` flag comes from the
/// matching checker.
pub fn run_algorithm(
    h: &Hypergraph,
    algo: Algo,
    params: &AlgoParams,
    strict_alpha_beta: bool,
) -> Result<AlgoRun> {
    let AlgoParams {
        alpha,
        beta,
        k,
        seed,
        budget,
    } = *params;
    let mode = alpha_beta_mode(strict_alpha_beta);
    match algo {
        Algo::ZeroRound => {
            let run = zero_round_is(h, alpha, beta, seed)?;
            Ok(AlgoRun {
                valid: is_alpha_beta(h, &run.set, alpha, beta, mode).pass,
                set: run.set.members(),
                rounds: run.rounds as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
        Algo::MoserTardos => {
            let run = moser_tardos_is(h, alpha, beta, seed, budget)?;
            Ok(AlgoRun {
                valid: is_alpha_beta(h, &run.set, alpha, beta, mode).pass,
                set: run.set.members(),
                rounds: run.rounds,
                messages: run.messages,
                resamples: Some(run.resamples),
                // The resampler is a driver-level loop; it reports
                // aggregate rounds and messages but no per-round trace.
                trace: Vec::new(),
            })
        }
        Algo::HighRank => {
            let run = high_rank_remove(h, k, seed)?;
            let valid = run
                .survivors_per_edge
                .iter()
                .zip(h.edges())
                .all(|(&survivors, edge)| survivors < edge.len().max(1));
            Ok(AlgoRun {
                valid,
                set: run.set.members(),
                rounds: run.rounds as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
        Algo::EdgePartition => {
            let run = edge_partition_is(h, alpha, beta, seed)?;
            Ok(AlgoRun {
                valid: is_alpha_beta(h, &run.set, alpha, beta, mode).pass,
                set: run.set.members(),
                rounds: run.total_rounds() as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
        Algo::RulingSet => {
            let run = find_ruling_set(h, k, seed)?;
            Ok(AlgoRun {
                valid: is_ruling_set(h, &run.set, 2, k).pass,
                set: run.set.members(),
                rounds: run.rounds as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
        Algo::KWeakMis => {
            let run = k_weak_mis_large_k(h, k, seed)?;
            Ok(AlgoRun {
                valid: is_k_weak_maximal(h, &run.set, k).pass,
                set: run.set.members(),
                rounds: run.rounds as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
        Algo::Matching => {
            let run = extract_maximal_matching(h, seed)?;
            Ok(AlgoRun {
                valid: is_maximal_matching(h, &run.edges).pass,
                set: run.edges.iter().map(|&e| e as u32).collect(),
                rounds: run.rounds as u64,
                messages: run.messages,
                resamples: None,
                trace: run.trace,
            })
        }
    }
}

/// Deterministic per-cell generation seed.
pub fn cell_gen_seed(base_seed: u64, cell_index: usize) -> u64 {
    stream_seed(base_seed, StreamDomain::Generator, cell_index as u64)
}

/// Deterministic per-trial run seed.
pub fn trial_seed(base_seed: u64, cell_index: usize, trial: u64) -> u64 {
    stream_seed(
        base_seed,
        StreamDomain::Trial,
        (cell_index as u64) << 20 | trial,
    )
}

/// Execute every cell and trial of the spec, in deterministic record
/// order. Cell-level failures (infeasible generation, bad parameters)
/// become error records instead of aborting the sweep.
pub fn execute(spec: &ExperimentSpec) -> Vec<RunRecord> {
    let cells: Vec<(usize, &CellConfig)> = spec.cells.iter().enumerate().collect();
    let run_cell = |(cell_index, cell): &(usize, &CellConfig)| -> Vec<RunRecord> {
        let cell_index = *cell_index;
        let gen_seed = cell_gen_seed(spec.base_seed, cell_index);
        let cfg = GeneratorConfig {
            n: cell.n,
            rank: cell.r,
            max_degree: cell.delta_max,
            uniform: cell.uniform,
            lambda: cell.lambda,
            seed: gen_seed,
        };
        let mut records = Vec::new();
        match generate(&cfg) {
            Ok(h) => {
                for trial in 0..spec.trials {
                    let seed = trial_seed(spec.base_seed, cell_index, trial);
                    let outcome =
                        build_params(spec.algo, cell.alpha, cell.beta, cell.k, seed, spec.budget)
                            .and_then(|params| {
                                run_algorithm(&h, spec.algo, &params, spec.strict_alpha_beta)
                            });
                    records.push(match outcome {
                        Ok(run) => RunRecord {
                            cell: (*cell).clone(),
                            trial,
                            gen_seed,
                            seed,
                            valid: run.valid,
                            rounds: run.rounds,
                            messages: run.messages,
                            set_size: run.set.len(),
                            set: run.set,
                            resamples: run.resamples,
                            error: None,
                        },
                        Err(e) => RunRecord {
                            cell: (*cell).clone(),
                            trial,
                            gen_seed,
                            seed,
                            valid: false,
                            rounds: 0,
                            messages: 0,
                            set_size: 0,
                            set: Vec::new(),
                            resamples: None,
                            error: Some(format!("{e:#}")),
                        },
                    });
                }
            }
            Err(e) => {
                records.push(RunRecord {
                    cell: (*cell).clone(),
                    trial: 0,
                    gen_seed,
                    seed: 0,
                    valid: false,
                    rounds: 0,
                    messages: 0,
                    set_size: 0,
                    set: Vec::new(),
                    resamples: None,
                    error: Some(format!("generation failed: {e}")),
                });
            }
        }
        records
    };

    #[cfg(feature = "parallel")]
    let per_cell: Vec<Vec<RunRecord>> = {
        use rayon::prelude::*;
        cells.par_iter().map(run_cell).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_cell: Vec<Vec<RunRecord>> = cells.iter().map(run_cell).collect();

    per_cell.into_iter().flatten().collect()
}

/// Per-cell aggregate statistics for the bench command.
#[derive(Debug, Serialize)]
pub struct CellStats {
    pub cell: CellConfig,
    pub trials: u64,
    pub success_rate: f64,
    pub mean_rounds: f64,
    pub min_rounds: u64,
    pub max_rounds: u64,
    pub mean_messages: f64,
    pub mean_set_size: f64,
}

pub fn aggregate(records: &[RunRecord]) -> Vec<CellStats> {
    let mut stats = Vec::new();
    let mut index = 0;
    while index < records.len() {
        let cell = &records[index].cell;
        let mut end = index;
        while end < records.len() && &records[end].cell == cell {
            end += 1;
        }
        let group = &records[index..end];
        let ok: Vec<&RunRecord> = group.iter().filter(|r| r.error.is_none()).collect();
        let trials = group.len() as u64;
        if ok.is_empty() {
            stats.push(CellStats {
                cell: cell.clone(),
                trials,
                success_rate: 0.0,
                mean_rounds: 0.0,
                min_rounds: 0,
                max_rounds: 0,
                mean_messages: 0.0,
                mean_set_size: 0.0,
            });
        } else {
            let valid = ok.iter().filter(|r| r.valid).count();
            stats.push(CellStats {
                cell: cell.clone(),
                trials,
                success_rate: valid as f64 / ok.len() as f64,
                mean_rounds: ok.iter().map(|r| r.rounds as f64).sum::<f64>() / ok.len() as f64,
                min_rounds: ok.iter().map(|r| r.rounds).min().unwrap_or(0),
                max_rounds: ok.iter().map(|r| r.rounds).max().unwrap_or(0),
                mean_messages: ok.iter().map(|r| r.messages as f64).sum::<f64>() / ok.len() as f64,
                mean_set_size: ok.iter().map(|r| r.set_size as f64).sum::<f64>() / ok.len() as f64,
            });
        }
        index = end;
    }
    stats
}

pub fn stats_to_csv(stats: &[CellStats]) -> String {
    let mut out = String::from(
        "algo,n,r,delta_max,lambda,uniform,alpha,beta,k,trials,success_rate,mean_rounds,min_rounds,max_rounds,mean_messages,mean_set_size\n",
    );
    let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            s.cell.algo,
            s.cell.n,
            s.cell.r,
            s.cell.delta_max,
            opt(s.cell.lambda),
            s.cell.uniform,
            opt(s.cell.alpha),
            opt(s.cell.beta),
            opt(s.cell.k),
            s.trials,
            s.success_rate,
            s.mean_rounds,
            s.min_rounds,
            s.max_rounds,
            s.mean_messages,
            s.mean_set_size,
        ));
    }
    out
}

/// Gnuplot-compatible whitespace table of the aggregates.
pub fn stats_to_dat(stats: &[CellStats]) -> String {
    let mut out = String::from(
        "# n r delta_max alpha beta k mean_rounds success_rate mean_messages mean_set_size\n",
    );
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    for s in stats {
        out.push_str(&format!(
            "{} {} {} {} {} {} {} {} {} {}\n",
            s.cell.n,
            s.cell.r,
            s.cell.delta_max,
            opt(s.cell.alpha),
            opt(s.cell.beta),
            opt(s.cell.k),
            s.mean_rounds,
            s.success_rate,
            s.mean_messages,
            s.mean_set_size,
        ));
    }
    out
}
