use clap::{Args, Parser, Subcommand, ValueEnum};
use hidden_clique::analytics::{
    optimize_params, tune_for_size, DenseParams, RateModel, SchedulePolicy, SearchBudget,
};
use hidden_clique::graph::io::{
    read_binary, read_edge_list, read_sidecar, write_binary, write_edge_list, write_sidecar,
};
use hidden_clique::graph::{generate_planted, Graph, VertexSet};
use hidden_clique::harness::{
    calibrate_constants, run_experiment, AmplifySettings, CalibrationMode, ExperimentConfig,
    ExperimentMode, Grid, OutputFormat, ParamsSource,
};
use hidden_clique::rng::rng_from_seed;
use hidden_clique::solver::{amplify, solve, Algorithm, RecoveryResult, SolveConfig};
use hidden_clique::Error;
use serde_json::json;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hclique",
    version,
    about = "Planted clique generation and recovery"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a planted instance and its JSON sidecar.
    Generate(GenerateArgs),
    /// Recover the clique of one instance.
    Solve(SolveArgs),
    /// Run a Monte Carlo grid.
    Experiment(ExperimentArgs),
    /// Print optimised parameters.
    Tune(TuneArgs),
    /// Minimise the critical constant and compare with the reference point.
    Calibrate(CalibrateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edges,
    Binary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    Basic,
    Variant,
    Dense,
    Kucera,
    Amplify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TuneMode {
    Basic,
    Variant,
    Dense,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// Clique size; defaults to round(c·√n).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output prefix; writes PREFIX.edges or PREFIX.bin plus PREFIX.json.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphFormat::Binary)]
    format: GraphFormat,
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file (`.bin` binary, anything else edge list).
    #[arg(long, conflicts_with = "n")]
    graph: Option<PathBuf>,
    /// Sidecar with the planted set; defaults to the graph path with `.json`.
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Generate the instance in memory instead of reading one.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = SolveMode::Basic)]
    mode: SolveMode,
    /// Explicit parameters; when α or β is missing both are tuned.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    /// Solver seed; also the instance seed with `--n`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Vertices sampled per amplification trial.
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 100)]
    max_trials: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON file mirroring the experiment configuration; other flags are
    /// ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ExperimentModeArg::Basic)]
    mode: ExperimentModeArg,
    #[arg(long, value_delimiter = ',', default_value = "4000")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    c: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    p: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1.0")]
    q: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    master_seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 100)]
    max_trials: usize,
    #[arg(long)]
    seed_size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormatArg::Csv)]
    format: OutputFormatArg,
    /// Leave timing columns empty so reruns produce identical files.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentModeArg {
    Basic,
    Variant,
    Dense,
    Kucera,
    Seeded,
    Amplify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct TuneArgs {
    #[arg(long, value_enum, default_value_t = TuneMode::Basic)]
    mode: TuneMode,
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Tune for a concrete size instead of maximising growth.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long, value_enum, default_value_t = CalibrateModeArg::Basic)]
    mode: CalibrateModeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CalibrateModeArg {
    Basic,
    Variant,
}

enum Failure {
    Lib(Error),
    /// Recovery ran but did not succeed.
    NotRecovered,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Experiment(a) => experiment(a),
        Command::Tune(a) => tune(a),
        Command::Calibrate(a) => calibrate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotRecovered) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values always serialise")
    );
}

fn clique_size(n: usize, k: Option<usize>, c: f64) -> usize {
    k.unwrap_or_else(|| (c * (n as f64).sqrt() + 0.5).floor() as usize)
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn generate(a: GenerateArgs) -> Result<(), Failure> {
    let k = clique_size(a.n, a.k, a.c);
    let inst = generate_planted(a.n, k, a.p, a.q, a.seed)?;
    let graph_path = match a.format {
        GraphFormat::Edges => with_extension(&a.out, "edges"),
        GraphFormat::Binary => with_extension(&a.out, "bin"),
    };
    let mut out = BufWriter::new(File::create(&graph_path).map_err(Error::from)?);
    match a.format {
        GraphFormat::Edges => write_edge_list(&inst.graph, &mut out)?,
        GraphFormat::Binary => write_binary(&inst.graph, &mut out)?,
    }
    out.flush().map_err(Error::from)?;
    let meta_path = with_extension(&a.out, "json");
    write_sidecar(
        &inst.meta(),
        BufWriter::new(File::create(&meta_path).map_err(Error::from)?),
    )?;
    print_json(&json!({
        "graph": graph_path,
        "meta": meta_path,
        "n": a.n,
        "k": k,
        "edges": inst.graph.edge_count(),
    }));
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let file = BufReader::new(File::open(path)?);
    if path.extension().is_some_and(|e| e == "bin") {
        read_binary(file)
    } else {
        read_edge_list(file)
    }
}

fn load_instance(a: &SolveArgs) -> Result<(Graph, usize, Option<VertexSet>), Error> {
    if let Some(n) = a.n {
        let k = clique_size(n, a.k, a.c.unwrap_or(3.0));
        let inst = generate_planted(n, k, a.p, a.q, a.seed)?;
        return Ok((inst.graph, k, Some(inst.planted)));
    }
    let Some(path) = &a.graph else {
        return Err(Error::InvalidParams("give --graph or --n".into()));
    };
    let graph = read_graph(path)?;
    let meta_path = a
        .meta
        .clone()
        .unwrap_or_else(|| path.with_extension("json"));
    let meta = if meta_path.exists() {
        Some(read_sidecar(BufReader::new(File::open(&meta_path)?))?)
    } else {
        None
    };
    let planted = match &meta {
        Some(m) => Some(VertexSet::from_indices(
            graph.n(),
            m.planted.iter().copied(),
        )?),
        None => None,
    };
    let k = match (a.k, &meta) {
        (Some(k), _) => k,
        (None, Some(m)) => m.k,
        (None, None) => return Err(Error::InvalidParams("clique size unknown: pass --k".into())),
    };
    Ok((graph, k, planted))
}

fn solve_cmd(a: SolveArgs) -> Result<(), Failure> {
    let (graph, k, planted) = load_instance(&a)?;
    let dense = DenseParams { p: a.p, q: a.q };
    let algorithm = match a.mode {
        SolveMode::Basic | SolveMode::Amplify => Algorithm::Basic,
        SolveMode::Variant => Algorithm::Variant,
        SolveMode::Dense => Algorithm::Dense(dense),
        SolveMode::Kucera => Algorithm::Kucera,
    };
    let config = match (a.mode, a.alpha, a.beta) {
        (SolveMode::Kucera, _, _) => SolveConfig::kucera(),
        (_, Some(alpha), Some(beta)) => SolveConfig {
            algorithm,
            alpha,
            beta,
            eta: a.eta,
            policy: SchedulePolicy::default(),
        },
        _ => {
            let model = match algorithm {
                Algorithm::Variant => RateModel::Variant,
                Algorithm::Dense(d) => RateModel::Dense(d),
                _ => RateModel::Basic,
            };
            let size = if a.mode == SolveMode::Amplify {
                k + ((graph.n() - k.min(graph.n())) as f64 / 2f64.powi(a.r as i32)).round() as usize
            } else {
                graph.n()
            };
            let tuned = tune_for_size(
                size,
                k,
                model,
                &SchedulePolicy::default(),
                &SearchBudget::default(),
            )?;
            SolveConfig::new(algorithm, &tuned.params)
        }
    };
    let mut rng = rng_from_seed(a.seed);
    let result = if a.mode == SolveMode::Amplify {
        amplify(
            &graph,
            k,
            a.r,
            &config,
            &mut rng,
            a.max_trials,
            planted.as_ref(),
        )?
    } else {
        solve(&graph, k, &config, &mut rng, planted.as_ref())?
    };
    print_json(&result_json(&result, &config));
    if result.succeeded() {
        Ok(())
    } else {
        Err(Failure::NotRecovered)
    }
}

fn result_json(r: &RecoveryResult, config: &SolveConfig) -> serde_json::Value {
    json!({
        "mode": r.mode,
        "alpha": config.alpha,
        "beta": config.beta,
        "eta": config.eta,
        "t": r.t,
        "k_t": r.k_t,
        "success": r.success,
        "failure": r.failure.as_ref().map(|f| json!({"phase": f.phase, "kind": f.error.kind(), "message": f.error.to_string()})),
        "amplify_trials": r.trials,
        "core_size": r.core.as_ref().map(VertexSet::len),
        "candidate": r.candidate.to_vec(),
        "trace": r.trace,
        "timings": r.timings,
    })
}

fn experiment(a: ExperimentArgs) -> Result<(), Failure> {
    let config = match &a.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => {
            let mode = match a.mode {
                ExperimentModeArg::Basic => ExperimentMode::Basic,
                ExperimentModeArg::Variant => ExperimentMode::Variant,
                ExperimentModeArg::Dense => ExperimentMode::Dense,
                ExperimentModeArg::Kucera => ExperimentMode::Kucera,
                ExperimentModeArg::Seeded => ExperimentMode::Seeded,
                ExperimentModeArg::Amplify => ExperimentMode::Amplify,
            };
            let c = if a.c.is_empty() && a.k.is_empty() {
                vec![3.0]
            } else {
                a.c
            };
            let grid = Grid {
                n: a.n,
                c,
                k: a.k,
                p: a.p,
                q: a.q,
            };
            let mut config = ExperimentConfig::new(mode, grid, a.trials, a.master_seed);
            config.workers = a.workers;
            if let (Some(alpha), Some(beta)) = (a.alpha, a.beta) {
                config.params = ParamsSource::Explicit {
                    alpha,
                    beta,
                    eta: a.eta,
                };
            }
            if mode == ExperimentMode::Amplify {
                config.amplify = Some(AmplifySettings {
                    r: a.r,
                    max_trials: a.max_trials,
                });
            }
            config.seed_size = a.seed_size;
            config.output = a.out;
            config.format = match a.format {
                OutputFormatArg::Csv => OutputFormat::Csv,
                OutputFormatArg::Json => OutputFormat::Json,
            };
            config.timings = !a.no_timings;
            config
        }
    };
    let report = run_experiment(&config)?;
    println!("cell,n,k,c,p,q,trials,successes,rate,wilson_lo,wilson_hi");
    for s in &report.summary {
        println!(
            "{},{},{},{:.4},{},{},{},{},{:.4},{:.4},{:.4}",
            s.cell,
            s.n,
            s.k,
            s.c,
            s.p,
            s.q,
            s.trials,
            s.successes,
            s.rate,
            s.wilson_lo,
            s.wilson_hi
        );
    }
    Ok(())
}

fn tune(a: TuneArgs) -> Result<(), Failure> {
    let model = match a.mode {
        TuneMode::Basic => RateModel::Basic,
        TuneMode::Variant => RateModel::Variant,
        TuneMode::Dense => RateModel::Dense(DenseParams::new(a.p, a.q)?),
    };
    match a.n {
        Some(n) => {
            let k = clique_size(n, None, a.c);
            let t = tune_for_size(
                n,
                k,
                model,
                &SchedulePolicy::default(),
                &SearchBudget::default(),
            )?;
            print_json(&json!({
                "n": n,
                "k": k,
                "params": t.params,
                "rates": t.rates,
                "t": t.schedule.t,
                "k_t": t.schedule.k_t(),
                "stop_reason": t.schedule.stop_reason,
                "predicted_failure": t.predicted_failure,
            }));
        }
        None => {
            let t = optimize_params(a.c, model, &SearchBudget::default())?;
            print_json(&json!({ "params": t.params, "rates": t.rates }));
        }
    }
    Ok(())
}

fn calibrate(a: CalibrateArgs) -> Result<(), Failure> {
    let mode = match a.mode {
        CalibrateModeArg::Basic => CalibrationMode::Basic,
        CalibrateModeArg::Variant => CalibrationMode::Variant,
    };
    let report = calibrate_constants(mode, &SearchBudget::default())?;
    print_json(&serde_json::to_value(&report).map_err(Error::from)?);
    Ok(())
}
