//! Seeded, parallel Monte Carlo experiments and calibration reports.

mod calibrate;
mod config;
mod run;
mod stats;

pub use calibrate::{
    calibrate_constants, success_curve, CalibrationMode, CalibrationReport, CurveAxis, CurvePoint,
    SuccessCurve,
};
pub use config::{
    AmplifySettings, Cell, ExperimentConfig, ExperimentMode, Grid, OutputFormat, ParamsSource,
};
pub use run::{
    read_csv_records, run_experiment, run_single_trial, solver_seed, write_csv, write_json,
    ExperimentReport, TrialRecord, CSV_COLUMNS, FORMAT_TAG,
};
pub use stats::{summarize, wilson_interval, CellSummary, Z95};
