//! `seqclus`: mine order-aware co-clusters from trajectory corpora.
//!
//! Three subcommands: `mine` runs the miner and writes result files into an
//! output directory, `stats` recomputes the summary report from a saved
//! result document, and `gen` produces a seeded synthetic corpus with
//! planted ground truth.
//!
//! Exit codes: 0 success, 2 invalid usage or input, 1 internal failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use seqclus::export::atomic_write;
use seqclus::ingest::CorpusFormat;
use seqclus::synth::{generate_corpus, GenSpec, PlantPosition, PlantSpec};
use seqclus::{
    document, load_corpus, mine, read_coclusters, report, write_alluvial_flows, write_coclusters,
    CorpusSummary, Dataset, MineResult, MinerConfig, Relevance, Statistic, StopReason,
};

#[derive(Parser)]
#[command(name = "seqclus", version, about = "Order-aware trajectory co-cluster miner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine co-clusters from a corpus and write result files.
    Mine(MineArgs),
    /// Recompute the summary report from a saved result document.
    Stats(StatsArgs),
    /// Generate a synthetic corpus with planted patterns.
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatMetricArg {
    Average,
    Zscore,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelevanceArg {
    Trajectory,
    Cost,
    Both,
}

impl From<RelevanceArg> for Relevance {
    fn from(arg: RelevanceArg) -> Relevance {
        match arg {
            RelevanceArg::Trajectory => Relevance::Trajectory,
            RelevanceArg::Cost => Relevance::Cost,
            RelevanceArg::Both => Relevance::Both,
        }
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file (long-format CSV or JSONL).
    #[arg(long)]
    input: PathBuf,
    /// Corpus layout; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// CSV column holding the element values (default: element).
    #[arg(long)]
    dimension: Option<String>,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Maximum number of candidate co-clusters.
    #[arg(long)]
    k: usize,
    /// Overlap threshold in [0, 1].
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    /// Pruning statistic.
    #[arg(long, value_enum, default_value = "zscore")]
    stat_metric: StatMetricArg,
    /// Z threshold for --stat-metric zscore (default 1).
    #[arg(long)]
    z: Option<f64>,
    /// Pruning reference: trajectory count, cost, or both.
    #[arg(long, value_enum, default_value = "both")]
    relevance: RelevanceArg,
    /// Seed only from elements at least as frequent as the corpus mean (default).
    #[arg(long, conflicts_with = "no_frequent_only")]
    frequent_only: bool,
    /// Seed from every element regardless of frequency.
    #[arg(long)]
    no_frequent_only: bool,
    /// Output directory for coclusters.json, metrics.json, alluvial.csv, manifest.json.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Result document written by a previous mine run.
    #[arg(long)]
    coclusters: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    /// Number of trajectories.
    #[arg(long)]
    n: usize,
    /// Alphabet size, planted elements included.
    #[arg(long)]
    alphabet: usize,
    /// Minimum trajectory length.
    #[arg(long, default_value_t = 4)]
    len_min: usize,
    /// Maximum trajectory length.
    #[arg(long, default_value_t = 10)]
    len_max: usize,
    /// Planted pattern as `elem,elem[,..]:carriers[:start|random|end]`; repeatable.
    #[arg(long = "plant")]
    plants: Vec<String>,
    /// Corpus output path (JSONL); ground truth lands beside it as `<stem>.truth.json`.
    #[arg(long)]
    out: PathBuf,
}

enum CmdError {
    /// Bad flags or bad input data; exit 2.
    User(String),
    /// Failure outside the user's control; exit 1.
    Internal(anyhow::Error),
}

fn user<E: std::fmt::Display>(err: E) -> CmdError {
    CmdError::User(err.to_string())
}

fn internal<E: Into<anyhow::Error>>(err: E) -> CmdError {
    CmdError::Internal(err.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Internal(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn resolve_format(args: &CorpusArgs) -> Result<CorpusFormat, CmdError> {
    if let Some(format) = args.format {
        return Ok(match format {
            FormatArg::Csv => CorpusFormat::CsvLong,
            FormatArg::Jsonl => CorpusFormat::Jsonl,
        });
    }
    match args.input.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(CorpusFormat::CsvLong),
        Some("jsonl") => Ok(CorpusFormat::Jsonl),
        _ => Err(CmdError::User(format!(
            "cannot infer corpus format from '{}'; pass --format csv|jsonl",
            args.input.display()
        ))),
    }
}

fn load(args: &CorpusArgs) -> Result<Dataset, CmdError> {
    let format = resolve_format(args)?;
    load_corpus(&args.input, format, args.dimension.as_deref()).map_err(user)
}

#[derive(Serialize)]
struct ManifestConfig {
    k: usize,
    epsilon: f64,
    stat_metric: &'static str,
    z: Option<f64>,
    relevance: &'static str,
    frequent_only: bool,
}

#[derive(Serialize)]
struct ManifestIteration {
    iteration: usize,
    sequence: Vec<String>,
    n_trajectories: usize,
    cost: i64,
    max_overlap: f64,
    inserted: bool,
}

/// Record of one mine invocation: exact configuration, corpus shape,
/// timing, and the per-iteration candidate trail.
#[derive(Serialize)]
struct RunManifest {
    config: ManifestConfig,
    corpus: CorpusSummary,
    wall_time_ms: u128,
    stop: &'static str,
    n_candidates: usize,
    n_kept: usize,
    iterations: Vec<ManifestIteration>,
}

fn manifest(
    config: &MinerConfig,
    dataset: &Dataset,
    result: &MineResult,
    wall_time_ms: u128,
) -> RunManifest {
    let (stat_metric, z) = match config.statistic {
        Statistic::Average => ("average", None),
        Statistic::ZScore(z) => ("zscore", Some(z)),
    };
    RunManifest {
        config: ManifestConfig {
            k: config.k,
            epsilon: config.epsilon,
            stat_metric,
            z,
            relevance: match config.relevance {
                Relevance::Trajectory => "trajectory",
                Relevance::Cost => "cost",
                Relevance::Both => "both",
            },
            frequent_only: config.frequent_only,
        },
        corpus: CorpusSummary::of(dataset),
        wall_time_ms,
        stop: match result.trace.stop {
            StopReason::CostFloor => "cost-floor",
            StopReason::NoCandidate => "no-candidate",
            StopReason::BudgetExhausted => "budget-exhausted",
        },
        n_candidates: result.trace.n_candidates,
        n_kept: result.coclusters.len(),
        iterations: result
            .trace
            .iterations
            .iter()
            .map(|it| ManifestIteration {
                iteration: it.iteration,
                sequence: dataset.resolve(&it.seq),
                n_trajectories: it.n_tids,
                cost: it.cost,
                max_overlap: it.max_overlap,
                inserted: it.inserted,
            })
            .collect(),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CmdError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(internal)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
        .map_err(|e| internal(anyhow::anyhow!("writing {}: {e}", path.display())))
}

fn cmd_mine(args: MineArgs) -> Result<(), CmdError> {
    let config = MinerConfig {
        k: args.k,
        epsilon: args.epsilon,
        statistic: match args.stat_metric {
            StatMetricArg::Average => {
                if args.z.is_some() {
                    return Err(CmdError::User(
                        "--z only applies to --stat-metric zscore".into(),
                    ));
                }
                Statistic::Average
            }
            StatMetricArg::Zscore => Statistic::ZScore(args.z.unwrap_or(1.0)),
        },
        relevance: args.relevance.into(),
        frequent_only: !args.no_frequent_only,
    };
    config.validate().map_err(user)?;

    let dataset = load(&args.corpus)?;
    std::fs::create_dir_all(&args.out).map_err(|e| {
        CmdError::User(format!("cannot create output directory '{}': {e}", args.out.display()))
    })?;

    let started = Instant::now();
    let result = mine(&dataset, &config).map_err(user)?;
    let wall_time_ms = started.elapsed().as_millis();

    let doc = document(&result.coclusters, &dataset);
    write_coclusters(&args.out.join("coclusters.json"), &doc).map_err(internal)?;
    write_json(&args.out.join("metrics.json"), &report(&result.coclusters, &dataset))?;
    write_alluvial_flows(&args.out.join("alluvial.csv"), &doc).map_err(internal)?;
    write_json(
        &args.out.join("manifest.json"),
        &manifest(&config, &dataset, &result, wall_time_ms),
    )?;

    println!(
        "kept {} of {} candidate co-clusters ({}) in {wall_time_ms} ms; outputs in {}",
        result.coclusters.len(),
        result.trace.n_candidates,
        match result.trace.stop {
            StopReason::CostFloor => "cost floor reached",
            StopReason::NoCandidate => "no further candidates",
            StopReason::BudgetExhausted => "k budget spent",
        },
        args.out.display()
    );
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<(), CmdError> {
    let dataset = load(&args.corpus)?;
    let doc = read_coclusters(&args.coclusters).map_err(user)?;
    let coclusters = seqclus::export::document_to_coclusters(&doc, &dataset).map_err(user)?;
    let summary = report(&coclusters, &dataset);
    match &args.out {
        Some(path) => write_json(path, &summary)?,
        None => println!("{}", serde_json::to_string_pretty(&summary).map_err(internal)?),
    }
    Ok(())
}

fn parse_plant(text: &str) -> Result<PlantSpec, CmdError> {
    let parts: Vec<&str> = text.split(':').collect();
    let (elements, carriers, position) = match parts.as_slice() {
        [elements, carriers] => (elements, carriers, PlantPosition::Random),
        [elements, carriers, position] => {
            let position = match *position {
                "start" => PlantPosition::Start,
                "random" => PlantPosition::Random,
                "end" => PlantPosition::End,
                other => {
                    return Err(CmdError::User(format!(
                        "plant position must be start, random, or end, got '{other}'"
                    )))
                }
            };
            (elements, carriers, position)
        }
        _ => {
            return Err(CmdError::User(format!(
                "plant spec '{text}' must look like elem,elem[,..]:carriers[:position]"
            )))
        }
    };
    let pattern: Vec<String> = elements
        .split(',')
        .filter(|e| !e.is_empty())
        .map(str::to_owned)
        .collect();
    let n_carriers: usize = carriers
        .parse()
        .map_err(|_| CmdError::User(format!("plant carrier count '{carriers}' is not a number")))?;
    Ok(PlantSpec {
        pattern,
        n_carriers,
        position,
    })
}

fn cmd_gen(args: GenArgs) -> Result<(), CmdError> {
    let plants = args
        .plants
        .iter()
        .map(|text| parse_plant(text))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = GenSpec {
        seed: args.seed,
        n_trajectories: args.n,
        alphabet_size: args.alphabet,
        len_range: (args.len_min, args.len_max),
        plants,
    };
    let (dataset, truth) = generate_corpus(&spec).map_err(user)?;

    let mut corpus_bytes = Vec::new();
    for trajectory in dataset.trajectories() {
        let line = serde_json::json!({
            "id": dataset.trajectory_key(trajectory.tid),
            "elements": dataset.resolve(&trajectory.elements),
        });
        corpus_bytes.extend_from_slice(serde_json::to_string(&line).map_err(internal)?.as_bytes());
        corpus_bytes.push(b'\n');
    }
    atomic_write(&args.out, &corpus_bytes)
        .map_err(|e| internal(anyhow::anyhow!("writing {}: {e}", args.out.display())))?;

    let truth_path = args.out.with_extension("truth.json");
    let truth_doc = serde_json::json!({
        "seed": args.seed,
        "n_trajectories": args.n,
        "alphabet_size": args.alphabet,
        "len_range": [args.len_min, args.len_max],
        "plants": truth
            .iter()
            .map(|p| serde_json::json!({ "pattern": p.pattern, "carriers": p.carriers }))
            .collect::<Vec<_>>(),
    });
    write_json(&truth_path, &truth_doc)?;

    println!(
        "wrote {} trajectories to {} (ground truth in {})",
        dataset.n_trajectories(),
        args.out.display(),
        truth_path.display()
    );
    Ok(())
}
