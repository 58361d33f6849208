use super::config::{Cell, ExperimentConfig, ExperimentMode, OutputFormat, ParamsSource};
use super::stats::{summarize, CellSummary};
use crate::analytics::{tune_for_size, CliqueParams, RateModel, SearchBudget};
use crate::error::{Error, Result};
use crate::graph::{generate_planted, VertexSet};
use crate::rng::{rng_from_seed, sample_distinct, splitmix64_mix, trial_seed};
use crate::solver::{amplify, solve, solve_seeded, Algorithm, RecoveryResult, SolveConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Version tag written at the top of every output file.
pub const FORMAT_TAG: &str = "hcl-v1";

/// One row of output. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: usize,
    pub n: usize,
    pub k: usize,
    pub c: f64,
    pub p: f64,
    pub q: f64,
    pub mode: ExperimentMode,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub eta: Option<f64>,
    pub t: Option<usize>,
    pub trial: usize,
    pub seed: u64,
    pub success: bool,
    /// `|candidate ∩ planted|`.
    pub overlap: usize,
    pub candidate_size: usize,
    pub failure_phase: Option<String>,
    pub failure: Option<String>,
    pub amplify_trials: Option<usize>,
    pub phase1_ms: Option<f64>,
    pub phase2_ms: Option<f64>,
    pub phase3_ms: Option<f64>,
    pub total_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format: String,
    pub records: Vec<TrialRecord>,
    pub summary: Vec<CellSummary>,
}

/// Per-cell solver settings, fixed before any trial runs.
#[derive(Clone, Debug)]
struct CellPlan {
    cell: Cell,
    solver: std::result::Result<SolveConfig, Error>,
}

fn rate_model(mode: ExperimentMode, cell: &Cell) -> RateModel {
    match mode {
        ExperimentMode::Variant => RateModel::Variant,
        ExperimentMode::Dense => RateModel::Dense(cell.dense()),
        _ => RateModel::Basic,
    }
}

fn algorithm(mode: ExperimentMode, cell: &Cell) -> Algorithm {
    match mode {
        ExperimentMode::Variant => Algorithm::Variant,
        ExperimentMode::Dense => Algorithm::Dense(cell.dense()),
        ExperimentMode::Kucera => Algorithm::Kucera,
        _ => Algorithm::Basic,
    }
}

/// Size of the instance the inner solve sees: amplification keeps the
/// clique and about a `2^-r` share of the rest.
fn tuning_size(config: &ExperimentConfig, cell: &Cell) -> usize {
    match (config.mode, config.amplify) {
        (ExperimentMode::Amplify, Some(a)) => {
            let rest = (cell.n - cell.k) as f64 / 2f64.powi(a.r as i32);
            cell.k + (rest + 0.5).floor() as usize
        }
        _ => cell.n,
    }
}

fn plan_cell(config: &ExperimentConfig, cell: Cell) -> CellPlan {
    let algo = algorithm(config.mode, &cell);
    let solver = if !config.mode.is_tunable() {
        Ok(SolveConfig::kucera())
    } else {
        match config.params {
            ParamsSource::Explicit { alpha, beta, eta } => {
                let params = CliqueParams {
                    alpha,
                    beta,
                    eta,
                    c: cell.c,
                    epsilon4: config.policy.epsilon4,
                };
                Ok(SolveConfig {
                    policy: config.policy,
                    ..SolveConfig::new(algo, &params)
                })
            }
            ParamsSource::Auto => tune_for_size(
                tuning_size(config, &cell),
                cell.k,
                rate_model(config.mode, &cell),
                &config.policy,
                &SearchBudget::default(),
            )
            .map(|tuned| SolveConfig {
                policy: config.policy,
                ..SolveConfig::new(algo, &tuned.params)
            }),
        }
    };
    CellPlan { cell, solver }
}

/// Seed of the solver's random stream for a trial; the instance itself is
/// generated from the trial seed directly.
pub fn solver_seed(trial_seed: u64) -> u64 {
    splitmix64_mix(trial_seed)
}

fn run_trial(config: &ExperimentConfig, plan: &CellPlan, trial: usize) -> Result<TrialRecord> {
    let cell = &plan.cell;
    let seed = trial_seed(config.master_seed, cell.index as u64, trial as u64);
    let mut record = TrialRecord {
        cell: cell.index,
        n: cell.n,
        k: cell.k,
        c: cell.c,
        p: cell.p,
        q: cell.q,
        mode: config.mode,
        alpha: None,
        beta: None,
        eta: None,
        t: None,
        trial,
        seed,
        success: false,
        overlap: 0,
        candidate_size: 0,
        failure_phase: None,
        failure: None,
        amplify_trials: None,
        phase1_ms: None,
        phase2_ms: None,
        phase3_ms: None,
        total_ms: None,
    };
    let solver = match &plan.solver {
        Ok(s) => s,
        Err(e) => {
            record.failure_phase = Some("schedule".into());
            record.failure = Some(e.kind().into());
            return Ok(record);
        }
    };
    if config.mode.is_tunable() {
        record.alpha = Some(solver.alpha);
        record.beta = Some(solver.beta);
        record.eta = solver.eta;
    }

    let inst = generate_planted(cell.n, cell.k, cell.p, cell.q, seed)?;
    let mut rng = rng_from_seed(solver_seed(seed));
    let planted = Some(&inst.planted);
    let result: RecoveryResult = match config.mode {
        ExperimentMode::Seeded => {
            let size = config
                .seed_size
                .unwrap_or_else(|| (cell.n as f64).log2().ceil() as usize + 1)
                .clamp(1, cell.k);
            let members = inst.planted.to_vec();
            let picks = sample_distinct(&mut rng, cell.k, size)
                .into_iter()
                .map(|i| members[i]);
            let seed_set = VertexSet::from_indices(cell.n, picks)?;
            let dense = (cell.q < 1.0).then(|| cell.dense());
            solve_seeded(&inst.graph, cell.k, &seed_set, dense, planted)?
        }
        ExperimentMode::Amplify => {
            let a = config.amplify.expect("validated");
            amplify(
                &inst.graph,
                cell.k,
                a.r,
                solver,
                &mut rng,
                a.max_trials,
                planted,
            )?
        }
        _ => solve(&inst.graph, cell.k, solver, &mut rng, planted)?,
    };

    record.t = result.t;
    record.success = result.success == Some(true);
    record.overlap = result.candidate.intersection_len(&inst.planted);
    record.candidate_size = result.candidate.len();
    if let Some(f) = &result.failure {
        record.failure_phase = Some(f.phase.as_str().into());
        record.failure = Some(f.error.kind().into());
    }
    record.amplify_trials = result.trials;
    if config.timings {
        let t = result.timings;
        record.phase1_ms = Some(t.phase1_ms);
        record.phase2_ms = Some(t.phase2_ms);
        record.phase3_ms = Some(t.phase3_ms);
        record.total_ms = Some(t.total_ms);
    }
    Ok(record)
}

/// Run a single (cell, trial) pair in isolation.
pub fn run_single_trial(
    config: &ExperimentConfig,
    cell_index: usize,
    trial: usize,
) -> Result<TrialRecord> {
    config.validate()?;
    let cell = config
        .cells()?
        .into_iter()
        .nth(cell_index)
        .ok_or_else(|| Error::InvalidParams(format!("no cell {cell_index}")))?;
    run_trial(config, &plan_cell(config, cell), trial)
}

/// Run every cell × trial, write the output file if one is configured and
/// return the rows in (cell, trial) order with a per-cell summary.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    // fail on an unwritable path before spending time on trials
    let sink = match &config.output {
        Some(path) => Some(File::create(path)?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    let records = pool.install(|| -> Result<Vec<TrialRecord>> {
        let plans: Vec<CellPlan> = config
            .cells()?
            .into_par_iter()
            .map(|c| plan_cell(config, c))
            .collect();
        let jobs: Vec<(usize, usize)> = (0..plans.len())
            .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
            .collect();
        jobs.par_iter()
            .map(|&(c, t)| run_trial(config, &plans[c], t))
            .collect()
    })?;
    let summary = summarize(&records);
    let report = ExperimentReport {
        format: FORMAT_TAG.into(),
        records,
        summary,
    };
    if let Some(file) = sink {
        let mut out = BufWriter::new(file);
        match config.format {
            OutputFormat::Csv => write_csv(&report, &mut out)?,
            OutputFormat::Json => write_json(&report, &mut out)?,
        }
        out.flush()?;
    }
    Ok(report)
}

/// Rows under a `# hcl-v1` line and a header, then a `# summary` block.
pub fn write_csv<W: Write>(report: &ExperimentReport, out: &mut W) -> Result<()> {
    writeln!(out, "# {}", report.format)?;
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        for r in &report.records {
            w.serialize(r)?;
        }
        if report.records.is_empty() {
            w.write_record(CSV_COLUMNS)?;
        }
        w.flush()?;
    }
    writeln!(out, "# summary")?;
    let mut w = csv::Writer::from_writer(&mut *out);
    for s in &report.summary {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(report: &ExperimentReport, out: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)?;
    Ok(())
}

/// Column names of the row section, in order.
pub const CSV_COLUMNS: [&str; 23] = [
    "cell",
    "n",
    "k",
    "c",
    "p",
    "q",
    "mode",
    "alpha",
    "beta",
    "eta",
    "t",
    "trial",
    "seed",
    "success",
    "overlap",
    "candidate_size",
    "failure_phase",
    "failure",
    "amplify_trials",
    "phase1_ms",
    "phase2_ms",
    "phase3_ms",
    "total_ms",
];

/// Read the row section of a CSV file written by [`write_csv`].
pub fn read_csv_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l == format!("# {FORMAT_TAG}") => {}
        _ => return Err(Error::Format(format!("missing '# {FORMAT_TAG}' line"))),
    }
    let body: Vec<&str> = lines.take_while(|l| !l.starts_with("# summary")).collect();
    let joined = body.join("\n");
    let mut r = csv::Reader::from_reader(joined.as_bytes());
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{AmplifySettings, Grid};

    fn small(mode: ExperimentMode) -> ExperimentConfig {
        let mut cfg =
            ExperimentConfig::new(mode, Grid::with_k(vec![300, 400], vec![40, 60]), 3, 99);
        cfg.timings = false;
        cfg
    }

    #[test]
    fn k5_single_trial() {
        let cfg =
            ExperimentConfig::new(ExperimentMode::Basic, Grid::with_k(vec![5], vec![5]), 1, 1);
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.records.len(), 1);
        let r = &report.records[0];
        assert!(r.success, "{r:?}");
        assert_eq!(r.overlap, 5);
        assert_eq!(report.summary[0].successes, 1);
    }

    #[test]
    fn rows_are_canonical_and_worker_independent() {
        let mut cfg = small(ExperimentMode::Basic);
        let one = run_experiment(&cfg).unwrap();
        cfg.workers = 4;
        let four = run_experiment(&cfg).unwrap();
        assert_eq!(one, four);
        let keys: Vec<_> = one.records.iter().map(|r| (r.cell, r.trial)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), 12);
    }

    #[test]
    fn single_trial_replays_its_row() {
        let cfg = small(ExperimentMode::Kucera);
        let report = run_experiment(&cfg).unwrap();
        let row = &report.records[7];
        assert_eq!(&run_single_trial(&cfg, row.cell, row.trial).unwrap(), row);
    }

    #[test]
    fn summary_matches_rows() {
        let cfg = small(ExperimentMode::Seeded);
        let report = run_experiment(&cfg).unwrap();
        for s in &report.summary {
            let rows: Vec<_> = report.records.iter().filter(|r| r.cell == s.cell).collect();
            assert_eq!(s.trials, rows.len());
            assert_eq!(s.successes, rows.iter().filter(|r| r.success).count());
        }
        assert_eq!(summarize(&report.records), report.summary);
    }

    #[test]
    fn every_mode_runs() {
        for mode in [
            ExperimentMode::Variant,
            ExperimentMode::Dense,
            ExperimentMode::Amplify,
        ] {
            let mut cfg = small(mode);
            cfg.trials = 1;
            if mode == ExperimentMode::Dense {
                cfg.grid.p = vec![0.3];
                cfg.grid.q = vec![0.8];
            }
            if mode == ExperimentMode::Amplify {
                cfg.amplify = Some(AmplifySettings {
                    r: 1,
                    max_trials: 3,
                });
            }
            let report = run_experiment(&cfg).unwrap();
            assert_eq!(report.records.len(), 4);
            assert!(report.records.iter().all(|r| r.mode == mode));
        }
    }

    #[test]
    fn csv_round_trip_and_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = small(ExperimentMode::Basic);
        cfg.output = Some(dir.path().join("a.csv"));
        run_experiment(&cfg).unwrap();
        let first = std::fs::read(dir.path().join("a.csv")).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(first, std::fs::read(dir.path().join("a.csv")).unwrap());
        assert!(first.starts_with(b"# hcl-v1\ncell,n,k,c,p,q,mode,"));
        assert_eq!(
            read_csv_records(&dir.path().join("a.csv")).unwrap(),
            report.records
        );

        cfg.format = OutputFormat::Json;
        cfg.output = Some(dir.path().join("a.json"));
        run_experiment(&cfg).unwrap();
        let text = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
        assert_eq!(
            serde_json::from_str::<ExperimentReport>(&text).unwrap(),
            report
        );
    }

    #[test]
    fn header_matches_column_list() {
        let cfg = ExperimentConfig::new(
            ExperimentMode::Kucera,
            Grid::with_k(vec![20], vec![5]),
            1,
            3,
        );
        let report = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn unwritable_output_is_io() {
        let mut cfg = small(ExperimentMode::Kucera);
        cfg.output = Some("/nonexistent-dir/x/out.csv".into());
        assert!(matches!(run_experiment(&cfg), Err(Error::Io(_))));
    }

    #[test]
    fn infeasible_cells_are_recorded() {
        let mut cfg = ExperimentConfig::new(
            ExperimentMode::Basic,
            Grid::with_c(vec![400], vec![0.3]),
            2,
            1,
        );
        cfg.timings = false;
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.records.len(), 2);
        for r in &report.records {
            assert!(!r.success);
            assert_eq!(r.failure_phase.as_deref(), Some("schedule"));
        }
    }
}
