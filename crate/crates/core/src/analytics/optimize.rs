//! Parameter search over `(α, β[, η])`.
//!
//! Three objectives share one grid-then-refine driver:
//! * [`optimize_params`]: maximise `ρ/√τ` at a given `c`;
//! * [`calibrate`]: minimise the critical constant `c̃(α, β[, η])`;
//! * [`tune_for_size`]: minimise a predicted failure probability for a
//!   concrete `(n, k)`, which is what a finite run actually needs.

use super::critical::critical_c_unchecked;
use super::normal::sf;
use super::rates::{rates_for, CliqueParams, RateModel, Rates};
use super::schedule::{build_schedule, Schedule, SchedulePolicy};
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Evenly spaced search axis `start, start + step, .., <= end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Axis {
    pub const fn new(start: f64, end: f64, step: f64) -> Self {
        Axis { start, end, step }
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + self.step * i as f64)
            .collect()
    }
}

/// Grid and refinement effort for the parameter searches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub alpha: Axis,
    pub beta: Axis,
    pub eta: Axis,
    /// Rounds of coordinate-wise golden-section refinement.
    pub refine_rounds: usize,
    /// Golden-section steps per coordinate per round.
    pub golden_steps: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            alpha: Axis::new(0.02, 0.98, 0.02),
            beta: Axis::new(0.05, 4.0, 0.05),
            eta: Axis::new(0.05, 4.0, 0.05),
            refine_rounds: 3,
            golden_steps: 40,
        }
    }
}

/// A chosen parameter point and its rates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tuned {
    pub params: CliqueParams,
    pub rates: Rates,
}

/// Result of minimising the critical constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub model: RateModel,
    /// Minimised `c̃`.
    pub c_min: f64,
    /// Argmin, with `c = c_min`.
    pub params: CliqueParams,
    /// Rates at the argmin; `growth` is 1 up to bisection precision.
    pub rates: Rates,
}

type Point = [f64; 3];

fn uses_eta(model: RateModel) -> bool {
    matches!(model, RateModel::Variant)
}

/// Exhaustive grid followed by coordinate-wise golden-section search on the
/// cell around the best grid point. `score` is minimised; `None` marks an
/// infeasible point.
fn grid_then_refine(
    model: RateModel,
    budget: &SearchBudget,
    refine: bool,
    score: impl Fn(Point) -> Option<f64>,
) -> Option<(Point, f64)> {
    let alphas = budget.alpha.points();
    let betas = budget.beta.points();
    let etas = if uses_eta(model) {
        budget.eta.points()
    } else {
        vec![0.0]
    };

    let mut best: Option<(Point, f64)> = None;
    for &a in &alphas {
        for &b in &betas {
            for &e in &etas {
                let x = [a, b, e];
                if let Some(s) = score(x) {
                    // strict improvement keeps the first grid point on ties
                    if best.is_none_or(|(_, bs)| s < bs) {
                        best = Some((x, s));
                    }
                }
            }
        }
    }
    let (mut x, mut fx) = best?;
    if !refine {
        return Some((x, fx));
    }

    let steps = [budget.alpha.step, budget.beta.step, budget.eta.step];
    let dims = if uses_eta(model) { 3 } else { 2 };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..budget.refine_rounds {
        for d in 0..dims {
            let mut lo = x[d] - steps[d];
            let mut hi = x[d] + steps[d];
            if d == 0 {
                lo = lo.max(1e-6);
                hi = hi.min(1.0 - 1e-6);
            } else if d == 1 {
                lo = lo.max(0.0);
            }
            let eval = |v: f64| {
                let mut y = x;
                y[d] = v;
                score(y).unwrap_or(f64::INFINITY)
            };
            let mut c1 = hi - inv_phi * (hi - lo);
            let mut c2 = lo + inv_phi * (hi - lo);
            let (mut f1, mut f2) = (eval(c1), eval(c2));
            for _ in 0..budget.golden_steps {
                if f1 <= f2 {
                    hi = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = hi - inv_phi * (hi - lo);
                    f1 = eval(c1);
                } else {
                    lo = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = lo + inv_phi * (hi - lo);
                    f2 = eval(c2);
                }
            }
            let (cand, fc) = if f1 <= f2 { (c1, f1) } else { (c2, f2) };
            if fc < fx {
                x[d] = cand;
                fx = fc;
            }
        }
    }
    Some((x, fx))
}

fn eta_of(model: RateModel, x: Point) -> Option<f64> {
    uses_eta(model).then_some(x[2])
}

fn point_params(model: RateModel, x: Point, c: f64) -> CliqueParams {
    CliqueParams {
        alpha: x[0],
        beta: x[1],
        eta: eta_of(model, x),
        c,
        epsilon4: None,
    }
}

/// Parameters maximising `ρ/√τ` at clique constant `c`.
pub fn optimize_params(c: f64, model: RateModel, budget: &SearchBudget) -> Result<Tuned> {
    if !(c > 0.0 && c.is_finite()) {
        return invalid(format!("c = {c} must be positive"));
    }
    let score = |x: Point| {
        rates_for(model, x[0], x[1], eta_of(model, x), c)
            .ok()
            .map(|r| -r.growth)
    };
    let (x, _) = grid_then_refine(model, budget, true, score).ok_or(Error::NoFeasibleParams)?;
    let rates = rates_for(model, x[0], x[1], eta_of(model, x), c)?;
    if !rates.is_supercritical() {
        return Err(Error::NoFeasibleParams);
    }
    Ok(Tuned {
        params: point_params(model, x, c),
        rates,
    })
}

/// Minimise the critical constant over the search grid; approximates `c₀`
/// (basic) or `c*` (variant).
pub fn calibrate(model: RateModel, budget: &SearchBudget) -> Result<Calibration> {
    if let RateModel::Dense(d) = model {
        d.validate()?;
    }
    let score = |x: Point| critical_c_unchecked(model, x[0], x[1], x[2]).ok();
    let (x, c_min) = grid_then_refine(model, budget, true, score).ok_or(Error::NoFeasibleParams)?;
    let rates = rates_for(model, x[0], x[1], eta_of(model, x), c_min)?;
    Ok(Calibration {
        model,
        c_min,
        params: point_params(model, x, c_min),
        rates,
    })
}

/// Parameters tuned for a concrete instance size, with the schedule they
/// induce and the predicted failure probability they minimise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizedTuning {
    pub params: CliqueParams,
    pub rates: Rates,
    pub schedule: Schedule,
    pub predicted_failure: f64,
}

/// Normal-approximation failure estimate of the whole pipeline for given
/// rates and schedule.
///
/// Sums four terms, each a one-sided Gaussian tail:
/// * the surviving clique falls below the phase-two cut `(p+q)/(2q)·k_t`,
///   with the relative variance of `k̃_t` accumulated over the iterations;
/// * the surviving clique falls below the seed size `log₂ n + 1`;
/// * enough non-clique vertices cross the degree midpoint of `G_t` to
///   fill the `k_t - cut·k_t` slack of `K'` (Markov bound on the expected
///   crossing count);
/// * some non-clique vertex reaches the core threshold inside `K'`.
pub fn predicted_failure(n: usize, model: RateModel, rates: &Rates, schedule: &Schedule) -> f64 {
    let d = model.edge_probs();
    let sd_unit = (d.p * (1.0 - d.p)).sqrt();
    let gap = d.q - d.p;
    let last = schedule.final_level();
    let (n_t, k_t) = (last.n, last.k);

    let rel_var: f64 = schedule.levels[..schedule.t]
        .iter()
        .map(|l| (1.0 - rates.rho) / (rates.rho * l.k))
        .sum();
    let shortfall = |frac: f64| {
        if frac >= 1.0 {
            1.0
        } else if rel_var <= 0.0 {
            0.0
        } else {
            sf((1.0 - frac) / rel_var.sqrt())
        }
    };
    let cut = d.midpoint() / d.q;
    let seed_need = (n as f64).log2() + 1.0;

    let z_order = gap * k_t / (2.0 * sd_unit * n_t.sqrt());
    let z_core = gap * k_t.sqrt() / (2.0 * sd_unit);
    let crossings = n_t * sf(z_order);
    let impure = (crossings / ((1.0 - cut) * k_t)).min(1.0);
    let total = shortfall(cut) + shortfall(seed_need / k_t) + impure + n_t * sf(z_core);
    total.min(1.0)
}

/// Search `(α, β[, η])` for the point whose schedule at `(n, k)` minimises
/// [`predicted_failure`]; ties prefer larger growth.
pub fn tune_for_size(
    n: usize,
    k: usize,
    model: RateModel,
    policy: &SchedulePolicy,
    budget: &SearchBudget,
) -> Result<SizedTuning> {
    if n < 2 || k == 0 || k > n {
        return invalid(format!("cannot tune for n = {n}, k = {k}"));
    }
    let c = k as f64 / (n as f64).sqrt();
    let evaluate = |x: Point| -> Option<(Rates, Schedule, f64)> {
        let rates = rates_for(model, x[0], x[1], eta_of(model, x), c).ok()?;
        if !rates.is_supercritical() {
            return None;
        }
        let schedule = build_schedule(n, k, &rates, policy).ok()?;
        let fail = predicted_failure(n, model, &rates, &schedule);
        Some((rates, schedule, fail))
    };
    // lexicographic (failure, -growth) packed into one key: failures are
    // compared first, growth only separates exact ties
    let score = |x: Point| evaluate(x).map(|(r, _, f)| f - 1e-12 * r.growth.min(1e3));
    let (x, _) = grid_then_refine(model, budget, false, score).ok_or(Error::NoFeasibleParams)?;
    let (rates, schedule, predicted_failure) = evaluate(x).ok_or(Error::NoFeasibleParams)?;
    let mut params = point_params(model, x, c);
    params.epsilon4 = policy.epsilon4;
    Ok(SizedTuning {
        params,
        rates,
        schedule,
        predicted_failure,
    })
}
