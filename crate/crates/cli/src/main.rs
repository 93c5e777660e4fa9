//! Command-line front end: ingestion → weighting → influence estimation
//! → seed selection → evaluation, reproducible from a single config.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use evimax_core::activity::{load_activity_log, ActivityLog, FollowRecord, IngestError};
use evimax_core::credit::{cd_select, CreditTable};
use evimax_core::diffusion::{mc_greedy_select, CascadeModel, EdgeProbScheme};
use evimax_core::eval::{affected_nodes, criteria_curves, hit_ratio};
use evimax_core::graph::SocialGraph;
use evimax_core::influence::{
    estimate_influence, EstimatorParams, InfluenceField, Level, PipelineOptions, WeightScheme,
};
use evimax_core::select::{celf_select, SeedResult};
use evimax_core::synthetic::{generate_synthetic, SyntheticSpec};
use evimax_core::weights::Aggregation;

use config::{resolve, resolve_opt, ConfigFile};

#[derive(Parser)]
#[command(
    name = "evimax",
    version,
    about = "Evidential influence estimation and seed selection for Twitter-like graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate per-link influence from activity files.
    Estimate(EstimateArgs),
    /// Select a seed set under a chosen model.
    Select(SelectArgs),
    /// Run the synthetic-accuracy benchmark with planted influencers.
    Benchmark(BenchmarkArgs),
    /// Generate a synthetic fixture (graph, influence field, truth).
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelId {
    #[value(name = "ev1")]
    Ev1,
    #[value(name = "ev2")]
    Ev2,
    #[value(name = "cd")]
    Cd,
    #[value(name = "un_icm")]
    UnIcm,
    #[value(name = "tv_icm")]
    TvIcm,
    #[value(name = "wc_icm")]
    WcIcm,
    #[value(name = "ltm")]
    Ltm,
}

impl std::str::FromStr for ModelId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <ModelId as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightsArg {
    Global,
    Local,
}

impl std::str::FromStr for WeightsArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <WeightsArg as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AggregationArg {
    Sum,
    Mean,
}

impl std::str::FromStr for AggregationArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <AggregationArg as ValueEnum>::from_str(s, false)
    }
}

/// Shared estimation-pipeline flags.
#[derive(Args, Debug, Clone)]
struct PipelineArgs {
    /// Follow file: `follower<TAB>followee` per line.
    #[arg(long)]
    follows: Option<PathBuf>,
    /// Tweet file: `user<TAB>tweet_id` per line.
    #[arg(long)]
    tweets: Option<PathBuf>,
    /// Action file: `type<TAB>actor<TAB>target<TAB>tweet_id` per line.
    #[arg(long)]
    actions: Option<PathBuf>,
    /// Node-level scale softener in [0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Link-level scale softener in [0, 1].
    #[arg(long)]
    beta: Option<f64>,
    /// Skip the weight-updating step.
    #[arg(long)]
    no_update_step: bool,
    /// Link-weight formula.
    #[arg(long, value_enum)]
    weights: Option<WeightsArg>,
    /// Node-weight aggregation.
    #[arg(long, value_enum)]
    aggregation: Option<AggregationArg>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Also write per-edge weight vectors to weights.csv.
    #[arg(long)]
    dump_weights: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file (`key = value`); flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelectArgs {
    /// Model id.
    #[arg(long, value_enum)]
    model: Option<ModelId>,
    /// Seed-set size.
    #[arg(long)]
    k: Option<usize>,
    /// Spread level; must agree with ev1/ev2 when both are given.
    #[arg(long)]
    level: Option<u8>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Precomputed influence file `src,dst,inf` instead of activity
    /// files.
    #[arg(long)]
    field: Option<PathBuf>,
    /// ICM edge probability / LTM edge weight.
    #[arg(long)]
    p: Option<f64>,
    /// Monte Carlo runs per spread estimate.
    #[arg(long)]
    runs: Option<usize>,
    /// Master random seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file (`key = value`); flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    /// Synthetic graph size.
    #[arg(long)]
    nodes: Option<usize>,
    /// Synthetic edge count.
    #[arg(long)]
    edges: Option<usize>,
    /// Out-degree threshold for planting influencers.
    #[arg(long)]
    outlink_min: Option<usize>,
    /// Seed-set size scored against the planted set.
    #[arg(long)]
    k: Option<usize>,
    /// Repetitions per configuration.
    #[arg(long)]
    reps: Option<usize>,
    /// Master random seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated minimum-influence levels to sweep.
    #[arg(long)]
    sweep: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file (`key = value`); flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    outlink_min: Option<usize>,
    /// Lower bound of planted out-link influence.
    #[arg(long)]
    min_influence: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Config file (`key = value`); flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Usage and input problems exit with 2, computation failures with 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Select(args) => cmd_select(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Gen(args) => cmd_gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile, CliError> {
    match path {
        Some(p) => Ok(ConfigFile::load(p)?),
        None => Ok(ConfigFile::default()),
    }
}

/// Resolved pipeline settings after config merge.
struct PipelineSettings {
    follows: PathBuf,
    tweets: PathBuf,
    actions: PathBuf,
    options: PipelineOptions,
}

fn resolve_pipeline(
    args: &PipelineArgs,
    cfg: &ConfigFile,
) -> Result<PipelineSettings, CliError> {
    let path_of = |flag: &Option<PathBuf>, key: &str| -> Result<PathBuf, CliError> {
        resolve_opt(flag.clone(), cfg.get(key).map(PathBuf::from))
            .ok_or_else(|| CliError::Usage(format!("missing --{key} (or `{key}` in config)")))
    };
    let follows = path_of(&args.follows, "follows")?;
    let tweets = path_of(&args.tweets, "tweets")?;
    let actions = path_of(&args.actions, "actions")?;

    let alpha = resolve(args.alpha, cfg.parse::<f64>("alpha")?, 0.1);
    let beta = resolve(args.beta, cfg.parse::<f64>("beta")?, 0.1);
    let use_update_step = if args.no_update_step {
        false
    } else {
        cfg.parse::<bool>("use_update_step")?.unwrap_or(true)
    };
    let scheme = match resolve(args.weights, cfg.parse::<WeightsArg>("weights")?, WeightsArg::Global)
    {
        WeightsArg::Global => WeightScheme::Global,
        WeightsArg::Local => WeightScheme::Local,
    };
    let aggregation = match resolve(
        args.aggregation,
        cfg.parse::<AggregationArg>("aggregation")?,
        AggregationArg::Sum,
    ) {
        AggregationArg::Sum => Aggregation::Sum,
        AggregationArg::Mean => Aggregation::Mean,
    };

    Ok(PipelineSettings {
        follows,
        tweets,
        actions,
        options: PipelineOptions {
            params: EstimatorParams { alpha, beta },
            scheme,
            aggregation,
            use_update_step,
        },
    })
}

fn ingest(settings: &PipelineSettings) -> Result<(ActivityLog, SocialGraph), CliError> {
    let log = load_activity_log(&settings.follows, &settings.tweets, &settings.actions)?;
    if !log.rejected.is_empty() {
        eprintln!("warning: {} malformed line(s) rejected", log.rejected.len());
        for r in log.rejected.iter().take(5) {
            eprintln!("  {r}");
        }
    }
    let graph = SocialGraph::build(&log);
    Ok((log, graph))
}

fn out_dir(flag: &Option<PathBuf>, cfg: &ConfigFile) -> Result<PathBuf, CliError> {
    let dir = resolve(
        flag.clone(),
        cfg.get("out").map(PathBuf::from),
        PathBuf::from("."),
    );
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let settings = resolve_pipeline(&args.pipeline, &cfg)?;
    let dir = out_dir(&args.out, &cfg)?;

    let (_log, graph) = ingest(&settings)?;
    let output =
        estimate_influence(&graph, &settings.options).map_err(|e| CliError::Compute(e.to_string()))?;
    for c in &output.degenerate_components {
        eprintln!("warning: no {c} activity anywhere; component forced to 0");
    }

    let field_path = dir.join("influence.csv");
    write_influence_csv(&field_path, &graph, &output.field)?;

    if args.dump_weights {
        let weights_path = dir.join("weights.csv");
        let mut text = String::from("# src,dst,w_f,w_m,w_r\n");
        for (idx, e) in graph.edges().iter().enumerate() {
            let w = output.link_weights.get(idx);
            writeln!(
                text,
                "{},{},{},{},{}",
                graph.name(e.src),
                graph.name(e.dst),
                w.follow,
                w.mention,
                w.retweet
            )
            .expect("write to string");
        }
        std::fs::write(&weights_path, text)?;
        println!("wrote {}", weights_path.display());
    }

    let (min_inf, max_inf) = output
        .field
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    println!("nodes: {}", graph.node_count());
    println!("edges: {}", graph.edge_count());
    if graph.edge_count() > 0 {
        println!("inf range: [{min_inf}, {max_inf}]");
    }
    println!("wrote {}", field_path.display());
    Ok(())
}

fn write_influence_csv(
    path: &Path,
    graph: &SocialGraph,
    field: &InfluenceField,
) -> Result<(), CliError> {
    let mut text = String::from("# src,dst,inf\n");
    for (&(src, dst), &v) in field.edges().iter().zip(field.values()) {
        writeln!(text, "{},{},{}", graph.name(src), graph.name(dst), v).expect("write to string");
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Reads a `src,dst,inf` file back into a graph (edges as follow
/// relations) and its influence field.
fn read_field_csv(path: &Path) -> Result<(SocialGraph, InfluenceField), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read field file {}: {e}", path.display()))
    })?;
    let mut records: Vec<(String, String, f64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',');
        let (src, dst, inf) = (parts.next(), parts.next(), parts.next());
        let (src, dst, inf) = match (src, dst, inf, parts.next()) {
            (Some(s), Some(d), Some(v), None) => (s, d, v),
            _ => {
                return Err(CliError::Usage(format!(
                    "{}:{}: expected `src,dst,inf`",
                    path.display(),
                    idx + 1
                )))
            }
        };
        let value: f64 = inf.parse().map_err(|e| {
            CliError::Usage(format!("{}:{}: bad influence: {e}", path.display(), idx + 1))
        })?;
        records.push((src.to_string(), dst.to_string(), value));
    }
    let log = ActivityLog {
        follows: records
            .iter()
            .map(|(s, d, _)| FollowRecord {
                follower: s.clone(),
                followee: d.clone(),
            })
            .collect(),
        ..ActivityLog::default()
    };
    let graph = SocialGraph::build(&log);
    let edge_index: std::collections::HashMap<(u32, u32), usize> = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| ((e.src.0, e.dst.0), idx))
        .collect();
    let mut values = vec![None; graph.edge_count()];
    for (s, d, v) in &records {
        let src = graph.node_id(s).expect("interned");
        let dst = graph.node_id(d).expect("interned");
        let idx = edge_index[&(src.0, dst.0)];
        if !(0.0..=1.0).contains(v) {
            return Err(CliError::Usage(format!(
                "influence {v} on ({s}, {d}) outside [0, 1]"
            )));
        }
        if values[idx].replace(*v).is_some() {
            return Err(CliError::Usage(format!("duplicate edge ({s}, {d})")));
        }
    }
    let values = values.into_iter().map(|v| v.unwrap_or(0.0)).collect();
    let field = InfluenceField::from_graph(&graph, values);
    Ok((graph, field))
}

fn cmd_select(args: SelectArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let model = resolve_opt(args.model, cfg.parse::<ModelId>("model")?)
        .ok_or_else(|| CliError::Usage("missing --model".to_string()))?;
    let k = resolve_opt(args.k, cfg.parse::<usize>("k")?)
        .ok_or_else(|| CliError::Usage("missing --k".to_string()))?;
    let level_flag = resolve_opt(args.level, cfg.parse::<u8>("level")?);
    if let Some(level) = level_flag {
        let consistent = matches!(
            (model, level),
            (ModelId::Ev1, 1) | (ModelId::Ev2, 2) | (ModelId::Cd, _)
        );
        if !consistent && matches!(model, ModelId::Ev1 | ModelId::Ev2) {
            return Err(CliError::Usage(format!(
                "--level {level} conflicts with the chosen model"
            )));
        }
    }
    let p = resolve(args.p, cfg.parse::<f64>("p")?, 0.01);
    let runs = resolve(args.runs, cfg.parse::<usize>("runs")?, 10_000);
    let master_seed = resolve_opt(args.seed, cfg.parse::<u64>("seed")?)
        .or(cfg.parse::<u64>("master_seed")?)
        .unwrap_or(42);
    let dir = out_dir(&args.out, &cfg)?;

    let field_path = resolve_opt(args.field.clone(), cfg.get("field").map(PathBuf::from));
    let needs_field = matches!(model, ModelId::Ev1 | ModelId::Ev2);

    let (graph, field): (SocialGraph, Option<InfluenceField>) = match &field_path {
        Some(path) => {
            let (g, f) = read_field_csv(path)?;
            (g, Some(f))
        }
        None => {
            let settings = resolve_pipeline(&args.pipeline, &cfg)?;
            let (_log, graph) = ingest(&settings)?;
            let field = if needs_field {
                let output = estimate_influence(&graph, &settings.options)
                    .map_err(|e| CliError::Compute(e.to_string()))?;
                for c in &output.degenerate_components {
                    eprintln!("warning: no {c} activity anywhere; component forced to 0");
                }
                Some(output.field)
            } else {
                None
            };
            (graph, field)
        }
    };

    if k < 1 || k > graph.node_count() {
        return Err(CliError::Usage(format!(
            "k = {k} outside the valid range 1..={}",
            graph.node_count()
        )));
    }

    let result: SeedResult = match model {
        ModelId::Ev1 | ModelId::Ev2 => {
            let level = if model == ModelId::Ev1 {
                Level::One
            } else {
                Level::Two
            };
            let field = field.as_ref().expect("field prepared above");
            celf_select(field, k, level).map_err(|e| CliError::Compute(e.to_string()))?
        }
        ModelId::Cd => {
            let table = match &field {
                Some(f) => CreditTable::from_influence_field(f),
                None => CreditTable::from_graph(&graph),
            };
            cd_select(&table, k).map_err(|e| CliError::Compute(e.to_string()))?
        }
        ModelId::UnIcm | ModelId::TvIcm | ModelId::WcIcm | ModelId::Ltm => {
            let cascade = match model {
                ModelId::UnIcm => CascadeModel::icm(&graph, EdgeProbScheme::Uniform(p)),
                ModelId::TvIcm => CascadeModel::icm(
                    &graph,
                    EdgeProbScheme::Trivalency { seed: master_seed },
                ),
                ModelId::WcIcm => CascadeModel::icm(&graph, EdgeProbScheme::WeightedCascade),
                _ => Ok(CascadeModel::ltm_uniform(&graph, p)),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            mc_greedy_select(&graph, &cascade, k, runs, master_seed)
                .map_err(|e| CliError::Compute(e.to_string()))?
        }
    };

    let seeds_path = dir.join("seeds.csv");
    let mut text = String::from("# rank,node,marginal_gain,sigma_cumulative\n");
    for (rank, ((seed, gain), sigma)) in result
        .seeds
        .iter()
        .zip(&result.marginal_gains)
        .zip(&result.sigma_curve)
        .enumerate()
    {
        writeln!(text, "{},{},{},{}", rank + 1, graph.name(*seed), gain, sigma)
            .expect("write to string");
    }
    std::fs::write(&seeds_path, text)?;

    let criteria = criteria_curves(&graph, &result.seeds)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let criteria_path = dir.join("criteria.csv");
    let mut text = String::from("# rank,follow,tweet,mention,retweet\n");
    for rank in 0..criteria.len() {
        writeln!(
            text,
            "{},{},{},{},{}",
            rank + 1,
            criteria.follow[rank],
            criteria.tweet[rank],
            criteria.mention[rank],
            criteria.retweet[rank]
        )
        .expect("write to string");
    }
    std::fs::write(&criteria_path, text)?;

    if let Some(field) = &field {
        if needs_field {
            let affected = affected_nodes(field, &result.seeds);
            let affected_path = dir.join("affected.csv");
            let mut text = String::from("# rank,affected\n");
            for (rank, count) in affected.iter().enumerate() {
                writeln!(text, "{},{}", rank + 1, count).expect("write to string");
            }
            std::fs::write(&affected_path, text)?;
        }
    }

    println!("model: {model:?}, k: {k}");
    println!("selection time: {} ms", result.elapsed.as_millis());
    if let Some(last) = result.sigma_curve.last() {
        println!("final objective: {last}");
    }
    println!("wrote {}", seeds_path.display());
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let nodes = resolve(args.nodes, cfg.parse::<usize>("nodes")?, 1010);
    let edges = resolve(args.edges, cfg.parse::<usize>("edges")?, 6906);
    let outlink_min = resolve(args.outlink_min, cfg.parse::<usize>("outlink_min")?, 15);
    let k = resolve(args.k, cfg.parse::<usize>("k")?, 50);
    let reps = resolve(args.reps, cfg.parse::<usize>("reps")?, 10);
    let master_seed = resolve_opt(args.seed, cfg.parse::<u64>("seed")?)
        .or(cfg.parse::<u64>("master_seed")?)
        .unwrap_or(42);
    let sweep_text = resolve(
        args.sweep.clone(),
        cfg.get("sweep").map(String::from),
        "0.1,0.3,0.5,0.7,0.9".to_string(),
    );
    let sweep: Vec<f64> = sweep_text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad sweep value `{s}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let dir = out_dir(&args.out, &cfg)?;

    let mut text = String::from("# model,min_influence,mean_hit_ratio,std_hit_ratio\n");
    println!("model  min_influence  mean_hit_ratio  std");
    for &min_influence in &sweep {
        let mut ratios = [Vec::new(), Vec::new()];
        for rep in 0..reps {
            let spec = SyntheticSpec {
                n_nodes: nodes,
                n_edges: edges,
                influencer_outlink_min: outlink_min,
                min_influence,
                seed: master_seed.wrapping_add(rep as u64),
            };
            let (_g, field, truth) =
                generate_synthetic(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            for (slot, level) in [(0, Level::One), (1, Level::Two)] {
                let result = celf_select(&field, k, level)
                    .map_err(|e| CliError::Compute(e.to_string()))?;
                let ratio = hit_ratio(&result.seeds, &truth, k)
                    .map_err(|e| CliError::Compute(e.to_string()))?;
                ratios[slot].push(ratio);
            }
        }
        for (slot, label) in [(0, "ev1"), (1, "ev2")] {
            let (mean, std) = mean_std(&ratios[slot]);
            println!("{label:5}  {min_influence:<13}  {mean:<14.4}  {std:.4}");
            writeln!(text, "{label},{min_influence},{mean},{std}").expect("write to string");
        }
    }
    let path = dir.join("accuracy.csv");
    std::fs::write(&path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = if xs.len() > 1 {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let spec = SyntheticSpec {
        n_nodes: resolve(args.nodes, cfg.parse::<usize>("nodes")?, 1010),
        n_edges: resolve(args.edges, cfg.parse::<usize>("edges")?, 6906),
        influencer_outlink_min: resolve(
            args.outlink_min,
            cfg.parse::<usize>("outlink_min")?,
            15,
        ),
        min_influence: resolve(args.min_influence, cfg.parse::<f64>("min_influence")?, 0.1),
        seed: resolve(args.seed, cfg.parse::<u64>("seed")?, 42),
    };
    let dir = out_dir(&args.out, &cfg)?;

    let (graph, field, truth) =
        generate_synthetic(&spec).map_err(|e| CliError::Usage(e.to_string()))?;

    let follows_path = dir.join("follows.tsv");
    let mut text = String::from("# follower\tfollowee\n");
    for e in graph.edges() {
        writeln!(text, "{}\t{}", graph.name(e.src), graph.name(e.dst)).expect("write to string");
    }
    std::fs::write(&follows_path, text)?;

    let field_path = dir.join("influence.csv");
    write_influence_csv(&field_path, &graph, &field)?;

    let truth_path = dir.join("influencers.txt");
    let mut text = String::new();
    for v in &truth.influencers {
        writeln!(text, "{}", graph.name(*v)).expect("write to string");
    }
    std::fs::write(&truth_path, text)?;

    println!(
        "generated {} nodes, {} edges, {} planted influencers",
        graph.node_count(),
        graph.edge_count(),
        truth.influencers.len()
    );
    println!("wrote {}", follows_path.display());
    println!("wrote {}", field_path.display());
    println!("wrote {}", truth_path.display());
    Ok(())
}
