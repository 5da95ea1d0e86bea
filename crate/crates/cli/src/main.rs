//! Command-line driver: instance generation, algorithm runs, verification,
//! and benchmark sweeps.

mod experiment;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use experiment::{
    aggregate, build_params, execute, run_algorithm, Algo, CellConfig, ExperimentSpec, RunRecord,
};
use weakis_core::coloring::{Coloring, ColoringKind};
use weakis_core::hypergraph::{generate, GeneratorConfig, Hypergraph, VertexSet};
use weakis_core::verify::{
    is_alpha_beta, is_defective_coloring, is_k_weak, is_k_weak_maximal, is_maximal_matching,
    is_proper_coloring, is_ruling_set, AlphaBetaMode, CheckReport,
};

#[derive(Parser)]
#[command(
    name = "weakis",
    version,
    about = "Weak independent sets in hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph instance and write it to a file.
    Gen(GenArgs),
    /// Run one algorithm on a stored instance or across a generated grid.
    Run(RunArgs),
    /// Check stored outputs against the exact predicates.
    Verify(VerifyArgs),
    /// Run a grid and write per-cell aggregate statistics as CSV.
    Bench(BenchArgs),
    /// Convert run records into a gnuplot-compatible data file.
    Plot(PlotArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_name = "DEGREE")]
    delta_max: usize,
    #[arg(long)]
    lambda: Option<usize>,
    /// Allow edges smaller than r.
    #[arg(long)]
    non_uniform: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; `.json` selects the JSON format, anything else the
    /// line-oriented text format.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// Vertex counts (comma-separated for a grid).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Ranks (comma-separated for a grid).
    #[arg(long, value_delimiter = ',')]
    r: Vec<usize>,
    /// Degree caps (comma-separated for a grid).
    #[arg(long, value_delimiter = ',')]
    delta_max: Vec<usize>,
    /// Pairwise-intersection caps (optional grid axis).
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<usize>,
    #[arg(long)]
    non_uniform: bool,
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    beta: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resampling budget for moser-tardos.
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// Check the strict form of the alpha condition (members included).
    #[arg(long)]
    strict_alpha_beta: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Stored hypergraph; when given, the grid axes are ignored and one
    /// instance is run.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    /// Records file (JSON lines); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-round trace records next to the output
    /// (`<out>.trace.jsonl`; single-instance mode only).
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Predicate to check a stored object against.
    #[arg(long, value_enum)]
    predicate: Option<Predicate>,
    /// The hypergraph the object belongs to (`--input` works as an alias).
    #[arg(long, alias = "input")]
    hypergraph: Option<PathBuf>,
    /// Vertex set file (JSON with n, members, origin).
    #[arg(long)]
    set: Option<PathBuf>,
    /// Coloring file (JSON with assignment and palette_size).
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Matching file (JSON list of edge indexes).
    #[arg(long)]
    matching: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    strict_alpha_beta: bool,
    /// Re-check a records file produced by `run` instead.
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Predicate {
    KWeak,
    KWeakMaximal,
    AlphaBeta,
    RulingSet,
    ProperColoring,
    DefectiveColoring,
    MaximalMatching,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[command(flatten)]
    grid: GridArgs,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot-compatible data file.
    #[arg(long)]
    dat: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Records file written by `run`.
    #[arg(long)]
    records: PathBuf,
    /// Data file output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Plot(args) => cmd_plot(args),
    }
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let body = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if path.extension().is_some_and(|e| e == "json") {
        Hypergraph::from_json(&body)
    } else {
        Hypergraph::from_text(&body)
    };
    parsed.with_context(|| format!("parsing {}", path.display()))
}

fn write_hypergraph(h: &Hypergraph, path: &Path) -> Result<()> {
    let body = if path.extension().is_some_and(|e| e == "json") {
        h.to_json()
    } else {
        h.to_text()
    };
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let cfg = GeneratorConfig {
        n: args.n,
        rank: args.r,
        max_degree: args.delta_max,
        uniform: !args.non_uniform,
        lambda: args.lambda,
        seed: args.seed,
    };
    let h = generate(&cfg)?;
    write_hypergraph(&h, &args.out)?;
    eprintln!(
        "wrote {} ({} vertices, {} edges, rank {}, max degree {})",
        args.out.display(),
        h.vertex_count(),
        h.edge_count(),
        h.rank(),
        h.max_degree()
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SingleRunReport<'a> {
    algo: &'a str,
    seed: u64,
    valid: bool,
    rounds: u64,
    messages: u64,
    set_size: usize,
    set: &'a [u32],
    #[serde(skip_serializing_if = "Option::is_none")]
    resamples: Option<u64>,
}

fn first(values: &[usize]) -> Option<usize> {
    values.first().copied()
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    if let Some(input) = &args.input {
        let h = read_hypergraph(input)?;
        let params = build_params(
            args.algo,
            first(&args.grid.alpha),
            first(&args.grid.beta),
            first(&args.grid.k),
            args.grid.seed,
            args.grid.budget,
        )?;
        let run = run_algorithm(&h, args.algo, &params, args.grid.strict_alpha_beta)?;
        let report = SingleRunReport {
            algo: args.algo.name(),
            seed: args.grid.seed,
            valid: run.valid,
            rounds: run.rounds,
            messages: run.messages,
            set_size: run.set.len(),
            set: &run.set,
            resamples: run.resamples,
        };
        let line = serde_json::to_string(&report)?;
        match &args.out {
            Some(path) => fs::write(path, format!("{line}\n"))?,
            None => println!("{line}"),
        }
        if args.trace {
            let out = args
                .out
                .as_ref()
                .context("--trace requires --out in single-instance mode")?;
            let mut trace_path = out.clone().into_os_string();
            trace_path.push(".trace.jsonl");
            let mut body = String::new();
            for record in &run.trace {
                body.push_str(&serde_json::to_string(record)?);
                body.push('\n');
            }
            fs::write(&trace_path, body)?;
        }
        return Ok(ExitCode::SUCCESS);
    }

    if args.trace {
        bail!("--trace applies to single-instance runs; pass --input");
    }
    let spec = grid_spec(args.algo, &args.grid)?;
    let records = execute(&spec);
    let mut body = String::new();
    for record in &records {
        body.push_str(&serde_json::to_string(record)?);
        body.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn grid_spec(algo: Algo, grid: &GridArgs) -> Result<ExperimentSpec> {
    if grid.n.is_empty() || grid.r.is_empty() || grid.delta_max.is_empty() {
        bail!("grid mode requires --n, --r, and --delta-max (or use --input)");
    }
    let opt_axis = |values: &[usize], used: bool| -> Vec<Option<usize>> {
        if !used || values.is_empty() {
            vec![None]
        } else {
            values.iter().copied().map(Some).collect()
        }
    };
    let lambdas: Vec<Option<usize>> = if grid.lambda.is_empty() {
        vec![None]
    } else {
        grid.lambda.iter().copied().map(Some).collect()
    };
    if algo.needs_alpha_beta() && (grid.alpha.is_empty() || grid.beta.is_empty()) {
        bail!("{} requires --alpha and --beta", algo.name());
    }
    if algo.needs_weakness() && grid.k.is_empty() {
        bail!("{} requires --k", algo.name());
    }
    ExperimentSpec::grid(
        algo,
        &grid.n,
        &grid.r,
        &grid.delta_max,
        &lambdas,
        &opt_axis(&grid.alpha, algo.needs_alpha_beta()),
        &opt_axis(&grid.beta, algo.needs_alpha_beta()),
        &opt_axis(&grid.k, algo.needs_weakness()),
        !grid.non_uniform,
        grid.trials,
        grid.seed,
        grid.budget,
        grid.strict_alpha_beta,
    )
}

#[derive(Deserialize)]
struct ColoringFile {
    assignment: BTreeMap<String, u32>,
    palette_size: u32,
}

fn read_coloring(path: &Path, kind: ColoringKind) -> Result<Coloring> {
    let body = fs::read_to_string(path)?;
    let file: ColoringFile = serde_json::from_str(&body)?;
    let n = file.assignment.len();
    let mut colors = vec![0u32; n];
    for (vertex, color) in &file.assignment {
        let v: usize = vertex.parse().context("vertex keys must be integers")?;
        if v >= n {
            bail!("vertex {v} outside 0..{n}");
        }
        colors[v] = *color;
    }
    if colors.iter().any(|&c| c == 0 || c > file.palette_size) {
        bail!("colors must cover every vertex and fit the palette");
    }
    Ok(Coloring::new(colors, kind))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if let Some(records) = &args.records {
        return verify_records(records);
    }
    let predicate = args
        .predicate
        .context("--predicate (or --records) is required")?;
    let h = read_hypergraph(
        args.hypergraph
            .as_deref()
            .context("--hypergraph is required")?,
    )?;
    let mode = if args.strict_alpha_beta {
        AlphaBetaMode::StrictLiteral
    } else {
        AlphaBetaMode::Disjunctive
    };

    let read_set = || -> Result<VertexSet> {
        let path = args
            .set
            .as_deref()
            .context("--set is required for this predicate")?;
        let body = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&body)?)
    };

    let report: CheckReport = match predicate {
        Predicate::KWeak => is_k_weak(&h, &read_set()?, args.k.context("--k is required")?),
        Predicate::KWeakMaximal => {
            is_k_weak_maximal(&h, &read_set()?, args.k.context("--k is required")?)
        }
        Predicate::AlphaBeta => is_alpha_beta(
            &h,
            &read_set()?,
            args.alpha.context("--alpha is required")?,
            args.beta.context("--beta is required")?,
            mode,
        ),
        Predicate::RulingSet => {
            is_ruling_set(&h, &read_set()?, 2, args.k.context("--k is required")?)
        }
        Predicate::ProperColoring => {
            let coloring = read_coloring(
                args.coloring.as_deref().context("--coloring is required")?,
                ColoringKind::ProperOnUnderlying,
            )?;
            is_proper_coloring(&h, &coloring)
        }
        Predicate::DefectiveColoring => {
            let defect = args.k.context("--k gives the defect")?;
            let coloring = read_coloring(
                args.coloring.as_deref().context("--coloring is required")?,
                ColoringKind::Defective(defect),
            )?;
            is_defective_coloring(&h, &coloring, defect)
        }
        Predicate::MaximalMatching => {
            let path = args.matching.as_deref().context("--matching is required")?;
            let edges: Vec<usize> = serde_json::from_str(&fs::read_to_string(path)?)?;
            is_maximal_matching(&h, &edges)
        }
    };

    println!("{}", serde_json::to_string(&report)?);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct RecordsVerdict {
    checked: usize,
    skipped_errors: usize,
    mismatches: usize,
}

/// Re-generate each record's instance from its cell and seeds and compare
/// the stored validity flag with a fresh checker verdict on the stored
/// set.
fn verify_records(path: &Path) -> Result<ExitCode> {
    let body = fs::read_to_string(path)?;
    let mut checked = 0;
    let mut skipped = 0;
    let mut mismatches = 0;
    for (line_no, line) in body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: RunRecord =
            serde_json::from_str(line).with_context(|| format!("line {}", line_no + 1))?;
        if record.error.is_some() {
            skipped += 1;
            continue;
        }
        let cell = &record.cell;
        let cfg = GeneratorConfig {
            n: cell.n,
            rank: cell.r,
            max_degree: cell.delta_max,
            uniform: cell.uniform,
            lambda: cell.lambda,
            seed: record.gen_seed,
        };
        let h = generate(&cfg).context("re-generating the record's instance")?;
        let verdict = recheck(&h, cell, &record)?;
        checked += 1;
        if verdict != record.valid {
            mismatches += 1;
            eprintln!(
                "line {}: stored valid={} but re-check gives {}",
                line_no + 1,
                record.valid,
                verdict
            );
        }
    }
    let verdict = RecordsVerdict {
        checked,
        skipped_errors: skipped,
        mismatches,
    };
    println!("{}", serde_json::to_string(&verdict)?);
    Ok(if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn recheck(h: &Hypergraph, cell: &CellConfig, record: &RunRecord) -> Result<bool> {
    let set = VertexSet::from_members(h.vertex_count(), record.set.iter().copied(), "stored");
    Ok(match cell.algo.as_str() {
        "zero-round" | "moser-tardos" | "edge-partition" => {
            is_alpha_beta(
                h,
                &set,
                cell.alpha.context("record cell lacks alpha")?,
                cell.beta.context("record cell lacks beta")?,
                AlphaBetaMode::Disjunctive,
            )
            .pass
        }
        "high-rank" => {
            let survivors: Vec<usize> = h.edges().iter().map(|e| set.count_in(e)).collect();
            survivors
                .iter()
                .zip(h.edges())
                .all(|(&s, edge)| s < edge.len().max(1))
        }
        "ruling-set" => is_ruling_set(h, &set, 2, cell.k.context("record cell lacks k")?).pass,
        "k-weak-mis" => is_k_weak_maximal(h, &set, cell.k.context("record cell lacks k")?).pass,
        "matching" => {
            let edges: Vec<usize> = record.set.iter().map(|&e| e as usize).collect();
            is_maximal_matching(h, &edges).pass
        }
        other => bail!("unknown algorithm in record: {other}"),
    })
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let spec = grid_spec(args.algo, &args.grid)?;
    let records = execute(&spec);
    let stats = aggregate(&records);
    let csv = experiment::stats_to_csv(&stats);
    match &args.out {
        Some(path) => fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(dat) = &args.dat {
        fs::write(dat, experiment::stats_to_dat(&stats))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(args: PlotArgs) -> Result<ExitCode> {
    let body = fs::read_to_string(&args.records)?;
    let mut records = Vec::new();
    for (line_no, line) in body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: RunRecord =
            serde_json::from_str(line).with_context(|| format!("line {}", line_no + 1))?;
        records.push(record);
    }
    let stats = aggregate(&records);
    let dat = experiment::stats_to_dat(&stats);
    match &args.out {
        Some(path) => fs::write(path, dat)?,
        None => print!("{dat}"),
    }
    Ok(ExitCode::SUCCESS)
}
