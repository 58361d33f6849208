use super::config::{ExperimentConfig, Grid};
use super::run::run_experiment;
use super::stats::{wilson_interval, Z95};
use crate::analytics::{
    calibrate, critical_c, rates_for, CliqueParams, RateModel, Rates, SearchBudget,
};
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CalibrationMode {
    Basic,
    Variant,
}

impl CalibrationMode {
    fn model(self) -> RateModel {
        match self {
            CalibrationMode::Basic => RateModel::Basic,
            CalibrationMode::Variant => RateModel::Variant,
        }
    }

    /// The reference operating point quoted for each algorithm.
    pub fn reference_point(self) -> CliqueParams {
        match self {
            CalibrationMode::Basic => CliqueParams::basic(0.3728, 0.72, 1.65),
            CalibrationMode::Variant => CliqueParams::variant(0.8, 2.3, 1.2, 1.261),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub mode: CalibrationMode,
    /// Smallest critical constant found.
    pub c_min: f64,
    /// Where it was found, with `c = c_min`.
    pub argmin: CliqueParams,
    pub argmin_rates: Rates,
    pub reference: CliqueParams,
    pub reference_rates: Rates,
    /// Critical constant at the reference `(α, β[, η])`.
    pub reference_c: f64,
}

pub fn calibrate_constants(
    mode: CalibrationMode,
    budget: &SearchBudget,
) -> Result<CalibrationReport> {
    let model = mode.model();
    let cal = calibrate(model, budget)?;
    let reference = mode.reference_point();
    let reference_rates = rates_for(
        model,
        reference.alpha,
        reference.beta,
        reference.eta,
        reference.c,
    )?;
    let reference_c = critical_c(reference.alpha, reference.beta, reference.eta, None)?;
    Ok(CalibrationReport {
        mode,
        c_min: cal.c_min,
        argmin: cal.params,
        argmin_rates: cal.rates,
        reference,
        reference_rates,
        reference_c,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", content = "values", rename_all = "lowercase")]
pub enum CurveAxis {
    C(Vec<f64>),
    N(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub value: f64,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuccessCurve {
    pub axis: String,
    pub points: Vec<CurvePoint>,
    /// Whether the rates never drop along the axis; reported, not enforced.
    pub non_decreasing: bool,
}

/// Success rate along one axis with the rest of `fixed` held constant.
/// Other axes take the first value of `fixed.grid`; no output is written.
pub fn success_curve(axis: &CurveAxis, fixed: &ExperimentConfig) -> Result<SuccessCurve> {
    let (name, values): (&str, Vec<f64>) = match axis {
        CurveAxis::C(v) => ("c", v.clone()),
        CurveAxis::N(v) => ("n", v.iter().map(|&n| n as f64).collect()),
    };
    if values.len() < 3 {
        return invalid(format!(
            "a curve needs at least 3 points, got {}",
            values.len()
        ));
    }
    fixed.validate()?;
    let base = &fixed.grid;
    let mut points = Vec::with_capacity(values.len());
    for (i, &value) in values.iter().enumerate() {
        let mut grid = Grid {
            n: vec![base.n[0]],
            c: vec![],
            k: vec![],
            p: vec![base.p[0]],
            q: vec![base.q[0]],
        };
        match axis {
            CurveAxis::C(_) => grid.c = vec![value],
            CurveAxis::N(ns) => {
                grid.n = vec![ns[i]];
                match base.c.first() {
                    Some(&c) => grid.c = vec![c],
                    None => grid.k = vec![base.k[0]],
                }
            }
        }
        let config = ExperimentConfig {
            grid,
            output: None,
            master_seed: fixed.master_seed.wrapping_add(i as u64),
            ..fixed.clone()
        };
        let report = run_experiment(&config)?;
        let trials = report.records.len();
        let successes = report.records.iter().filter(|r| r.success).count();
        let (wilson_lo, wilson_hi) = wilson_interval(successes, trials, Z95);
        points.push(CurvePoint {
            value,
            trials,
            successes,
            rate: successes as f64 / trials as f64,
            wilson_lo,
            wilson_hi,
        });
    }
    let non_decreasing = points.windows(2).all(|w| w[1].rate >= w[0].rate);
    Ok(SuccessCurve {
        axis: name.into(),
        points,
        non_decreasing,
    })
}
