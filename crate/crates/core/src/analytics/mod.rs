//! Closed-form parameter mathematics: Gaussian tails, per-iteration survival
//! rates, critical clique constants, parameter search and the iteration
//! schedule.

mod critical;
mod normal;
mod optimize;
mod rates;
mod schedule;

pub use critical::{critical_c, C_LOWER, C_UPPER};
pub use normal::normal_sf;
pub use optimize::{
    calibrate, optimize_params, predicted_failure, tune_for_size, Axis, Calibration, SearchBudget,
    SizedTuning, Tuned,
};
pub use rates::{
    rates_basic, rates_dense, rates_for, rates_variant, CliqueParams, DenseParams, RateModel, Rates,
};
pub use schedule::{build_schedule, Level, Schedule, SchedulePolicy, StopReason};
