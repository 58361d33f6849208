use super::rates::Rates;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Stop rule for the shrinking phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchedulePolicy {
    /// Caps `t` at `ε₄ log₂ n / log₂(ρ²/τ)` when set.
    pub epsilon4: Option<f64>,
    /// Stop once `k_i >= theta_stop · √(n_i log₂ n_i)`.
    pub theta_stop: f64,
    /// Stop before the predicted graph drops below this many vertices.
    pub n_floor: f64,
    pub max_iterations: usize,
}

impl Default for SchedulePolicy {
    fn default() -> Self {
        SchedulePolicy {
            epsilon4: None,
            theta_stop: 4.0,
            n_floor: 100.0,
            max_iterations: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    TargetDensityReached,
    FloorReached,
    MaxIterations,
}

/// Predicted sizes at one level of the shrinking phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    /// `τ^i n`.
    pub n: f64,
    /// `ρ^i k`.
    pub k: f64,
    pub n_est: usize,
    pub k_est: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Number of shrinking iterations.
    pub t: usize,
    /// Levels `0..=t`.
    pub levels: Vec<Level>,
    /// `-log τ / log(ρ²/τ)`.
    pub a: f64,
    /// `-log ρ² / log(ρ²/τ)`; always `a - 1`.
    pub b: f64,
    pub stop_reason: StopReason,
}

impl Schedule {
    /// Estimated clique size after the last iteration.
    pub fn k_t(&self) -> usize {
        self.levels[self.t].k_est
    }

    pub fn final_level(&self) -> &Level {
        &self.levels[self.t]
    }
}

#[inline]
pub(crate) fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Plan the number of shrinking iterations for an `n`-vertex graph with a
/// `k`-clique under `rates`.
///
/// `t` is the first level at which any cap binds: the `ε₄` formula (when
/// configured) or `max_iterations`, the density target, or the size floor
/// for the next level.
pub fn build_schedule(
    n: usize,
    k: usize,
    rates: &Rates,
    policy: &SchedulePolicy,
) -> Result<Schedule> {
    if !(rates.tau > 0.0 && rates.tau < 1.0 && rates.rho > 0.0 && rates.rho <= 1.0) {
        return Err(Error::SubcriticalParams(format!(
            "rates out of range: tau = {}, rho = {}",
            rates.tau, rates.rho
        )));
    }
    if !(rates.growth > 1.0) {
        return Err(Error::SubcriticalParams(format!(
            "growth = {} <= 1",
            rates.growth
        )));
    }
    let (tau, rho) = (rates.tau, rates.rho);
    let log_ratio = (rho * rho / tau).ln();
    let a = -tau.ln() / log_ratio;
    let b = -(rho * rho).ln() / log_ratio;

    let eps_cap = policy.epsilon4.map(|e| {
        let x = e * (n as f64).log2() / (rho * rho / tau).log2();
        if x <= 0.0 {
            0
        } else {
            x.floor() as usize
        }
    });
    let hard_cap = eps_cap.map_or(policy.max_iterations, |c| c.min(policy.max_iterations));

    let mut levels = Vec::new();
    let (mut n_i, mut k_i) = (n as f64, k as f64);
    let stop_reason = loop {
        levels.push(Level {
            n: n_i,
            k: k_i,
            n_est: round_half_up(n_i),
            k_est: round_half_up(k_i),
        });
        let i = levels.len() - 1;
        let ready = policy.theta_stop * (n_i * n_i.log2().max(0.0)).sqrt();
        if k_i >= ready {
            break StopReason::TargetDensityReached;
        }
        if n_i * tau < policy.n_floor {
            break StopReason::FloorReached;
        }
        if i >= hard_cap {
            break StopReason::MaxIterations;
        }
        n_i *= tau;
        k_i *= rho;
    };
    let t = levels.len() - 1;
    if levels[t].k_est == 0 {
        return Err(Error::SubcriticalParams(format!(
            "estimated clique size rounds to 0 after {t} iterations"
        )));
    }
    Ok(Schedule {
        t,
        levels,
        a,
        b,
        stop_reason,
    })
}
