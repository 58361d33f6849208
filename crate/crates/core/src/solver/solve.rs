//! The full pipeline.

use super::expand::{dense_recover_from_seed, extract_core_with, kucera_topk, recover_from_seed};
use super::iterate::{run_phase1_traced, ThresholdRule};
use super::{Mode, Phase, RecoveryResult};
use crate::analytics::{
    build_schedule, rates_for, CliqueParams, DenseParams, RateModel, SchedulePolicy,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use rand_core::RngCore;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Algorithm {
    Basic,
    Variant,
    Dense(DenseParams),
    Kucera,
}

impl Algorithm {
    pub fn mode(&self) -> Mode {
        match self {
            Algorithm::Basic => Mode::Basic,
            Algorithm::Variant => Mode::Variant,
            Algorithm::Dense(_) => Mode::Dense,
            Algorithm::Kucera => Mode::Kucera,
        }
    }

    fn rate_model(&self) -> Option<RateModel> {
        match *self {
            Algorithm::Basic => Some(RateModel::Basic),
            Algorithm::Variant => Some(RateModel::Variant),
            Algorithm::Dense(d) => Some(RateModel::Dense(d)),
            Algorithm::Kucera => None,
        }
    }
}

/// Knobs for one solve. The clique constant is not a knob: it is always
/// `k/√n` of the graph being solved.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default)]
    pub policy: SchedulePolicy,
}

impl SolveConfig {
    pub fn new(algorithm: Algorithm, params: &CliqueParams) -> Self {
        SolveConfig {
            algorithm,
            alpha: params.alpha,
            beta: params.beta,
            eta: params.eta,
            policy: SchedulePolicy {
                epsilon4: params.epsilon4,
                ..SchedulePolicy::default()
            },
        }
    }

    pub fn kucera() -> Self {
        SolveConfig {
            algorithm: Algorithm::Kucera,
            alpha: 0.5,
            beta: 0.0,
            eta: None,
            policy: SchedulePolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithm == Algorithm::Kucera {
            return Ok(());
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return invalid(format!("alpha = {} outside (0, 1)", self.alpha));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return invalid(format!(
                "beta = {} must be finite and non-negative",
                self.beta
            ));
        }
        match self.algorithm {
            Algorithm::Variant => match self.eta {
                Some(e) if e.is_finite() => {}
                _ => return invalid("variant mode needs a finite eta"),
            },
            Algorithm::Dense(d) => d.validate()?,
            _ => {}
        }
        Ok(())
    }

    fn rule(&self) -> ThresholdRule {
        match self.algorithm {
            Algorithm::Variant => ThresholdRule::Variant {
                beta: self.beta,
                eta: self.eta.unwrap_or(0.0),
            },
            Algorithm::Dense(d) => ThresholdRule::Dense {
                beta: self.beta,
                p: d.p,
            },
            _ => ThresholdRule::Basic { beta: self.beta },
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn check_inputs(g: &Graph, k: usize, planted: Option<&VertexSet>) -> Result<()> {
    if k == 0 || k > g.n() {
        return invalid(format!("k = {k} must lie in 1..={}", g.n()));
    }
    if let Some(p) = planted {
        p.same_universe(g.n())?;
    }
    Ok(())
}

/// Recover a `k`-clique (or dense `k`-set) from `g`.
///
/// Returns `Err` only for malformed input. Failures of the algorithm itself
/// are reported in the result, tagged with the phase that stopped.
pub fn solve<R: RngCore + ?Sized>(
    g: &Graph,
    k: usize,
    config: &SolveConfig,
    rng: &mut R,
    planted: Option<&VertexSet>,
) -> Result<RecoveryResult> {
    check_inputs(g, k, planted)?;
    config.validate()?;
    let start = Instant::now();
    let n = g.n();
    let mut res = RecoveryResult::new(config.algorithm.mode(), n);

    let Some(model) = config.algorithm.rate_model() else {
        res.candidate = kucera_topk(g, k)?;
        res.timings.phase3_ms = ms(start);
        res.timings.total_ms = res.timings.phase3_ms;
        res.judge(planted);
        return Ok(res);
    };

    res = run_phases(g, k, config, model, rng, planted, res);
    res.timings.total_ms = ms(start);
    res.judge(planted);
    Ok(res)
}

fn run_phases<R: RngCore + ?Sized>(
    g: &Graph,
    k: usize,
    config: &SolveConfig,
    model: RateModel,
    rng: &mut R,
    planted: Option<&VertexSet>,
    mut res: RecoveryResult,
) -> RecoveryResult {
    let n = g.n();
    let c = k as f64 / (n as f64).sqrt();
    let schedule =
        match rates_for(model, config.alpha, config.beta, config.eta, c).and_then(|rates| {
            if rates.is_supercritical() {
                build_schedule(n, k, &rates, &config.policy)
            } else {
                Err(Error::SubcriticalParams(format!(
                    "growth {} <= 1 at c = {c}",
                    rates.growth
                )))
            }
        }) {
            Ok(s) => s,
            Err(e) => return res.fail(Phase::Schedule, e),
        };
    res.t = Some(schedule.t);
    let k_t = schedule.k_t();
    res.k_t = Some(k_t);

    let clock = Instant::now();
    let phase1 = run_phase1_traced(
        g,
        config.alpha,
        config.rule(),
        schedule.t,
        rng,
        planted,
        &mut res.trace,
    );
    res.timings.phase1_ms = ms(clock);
    let (g_t, map) = match phase1 {
        Ok(out) => out,
        Err(e) => return res.fail(Phase::Phase1, e),
    };

    let clock = Instant::now();
    let fraction = match config.algorithm {
        Algorithm::Dense(d) => d.midpoint(),
        _ => 0.75,
    };
    let core = extract_core_with(&g_t, k_t, fraction).and_then(|core| {
        if core.len() < 2 {
            Err(Error::CoreExtractionFailed(format!(
                "core has {} vertex",
                core.len()
            )))
        } else {
            Ok(core)
        }
    });
    res.timings.phase2_ms = ms(clock);
    let core = match core {
        Ok(core) => map.lift(&core, n),
        Err(e) => return res.fail(Phase::Phase2, e),
    };
    res.core = Some(core.clone());
    let seed_need = (n as f64).log2() + 1.0;
    if (core.len() as f64) < seed_need {
        return res.fail(
            Phase::Phase3,
            Error::SeedTooWeak(format!(
                "core of {} below log2 n + 1 = {seed_need:.2}",
                core.len()
            )),
        );
    }

    let clock = Instant::now();
    let found = match config.algorithm {
        Algorithm::Dense(d) => dense_recover_from_seed(g, &core, k, d),
        _ => recover_from_seed(g, &core, k),
    };
    res.timings.phase3_ms = ms(clock);
    match found {
        Ok(candidate) => {
            res.candidate = candidate;
            res
        }
        Err(e) => res.fail(Phase::Phase3, e),
    }
}

/// Phase three alone, from a caller-chosen seed.
pub fn solve_seeded(
    g: &Graph,
    k: usize,
    seed: &VertexSet,
    dense: Option<DenseParams>,
    planted: Option<&VertexSet>,
) -> Result<RecoveryResult> {
    check_inputs(g, k, planted)?;
    seed.same_universe(g.n())?;
    let start = Instant::now();
    let mut res = RecoveryResult::new(Mode::Seeded, g.n());
    res.core = Some(seed.clone());
    let found = match dense {
        Some(d) => dense_recover_from_seed(g, seed, k, d),
        None => recover_from_seed(g, seed, k),
    };
    res.timings.phase3_ms = ms(start);
    res.timings.total_ms = res.timings.phase3_ms;
    res = match found {
        Ok(candidate) => {
            res.candidate = candidate;
            res
        }
        Err(e) => res.fail(Phase::Phase3, e),
    };
    res.judge(planted);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_planted, is_clique};
    use crate::rng::rng_from_seed;

    fn basic(alpha: f64, beta: f64) -> SolveConfig {
        SolveConfig::new(Algorithm::Basic, &CliqueParams::basic(alpha, beta, 0.0))
    }

    #[test]
    fn complete_graph_is_its_own_clique() {
        let g = Graph::complete(300);
        let mut rng = rng_from_seed(1);
        let res = solve(
            &g,
            300,
            &basic(0.4, 0.5),
            &mut rng,
            Some(&VertexSet::full(300)),
        )
        .unwrap();
        assert_eq!(res.candidate, VertexSet::full(300));
        assert_eq!(res.success, Some(true));
        assert_eq!(res.trace.len(), res.t.unwrap() + 1);
    }

    #[test]
    fn subcritical_fails_at_schedule() {
        let inst = generate_planted(900, 30, 0.5, 1.0, 1).unwrap();
        let mut rng = rng_from_seed(1);
        // c = 1 is far below every critical constant
        let res = solve(
            &inst.graph,
            30,
            &basic(0.3728, 0.72),
            &mut rng,
            Some(&inst.planted),
        )
        .unwrap();
        let f = res.failure.unwrap();
        assert_eq!(f.phase, Phase::Schedule);
        assert!(matches!(f.error, Error::SubcriticalParams(_)));
        assert!(res.trace.is_empty());
        assert_eq!(res.success, Some(false));
    }

    #[test]
    fn bad_inputs_are_errors() {
        let g = Graph::complete(10);
        let mut rng = rng_from_seed(0);
        assert!(solve(&g, 0, &basic(0.4, 0.5), &mut rng, None).is_err());
        assert!(solve(&g, 11, &basic(0.4, 0.5), &mut rng, None).is_err());
        assert!(solve(&g, 5, &basic(1.4, 0.5), &mut rng, None).is_err());
        assert!(solve(
            &g,
            5,
            &basic(0.4, 0.5),
            &mut rng,
            Some(&VertexSet::empty(9))
        )
        .is_err());
    }

    #[test]
    fn recovers_a_large_planted_clique() {
        let inst = generate_planted(2000, 180, 0.5, 1.0, 17).unwrap();
        let mut rng = rng_from_seed(3);
        let res = solve(
            &inst.graph,
            180,
            &basic(0.45, 1.3),
            &mut rng,
            Some(&inst.planted),
        )
        .unwrap();
        assert!(res.failure.is_none(), "{:?}", res.failure);
        assert_eq!(res.success, Some(true));
        assert!(is_clique(&inst.graph, &res.candidate));
        assert!(res.core.unwrap().is_subset(&inst.planted));
    }

    #[test]
    fn solve_is_deterministic() {
        let inst = generate_planted(1500, 150, 0.5, 1.0, 2).unwrap();
        let cfg = basic(0.45, 1.3);
        let a = solve(
            &inst.graph,
            150,
            &cfg,
            &mut rng_from_seed(8),
            Some(&inst.planted),
        )
        .unwrap();
        let b = solve(
            &inst.graph,
            150,
            &cfg,
            &mut rng_from_seed(8),
            Some(&inst.planted),
        )
        .unwrap();
        assert_eq!(a.without_timings(), b.without_timings());
    }

    #[test]
    fn seeded_mode() {
        let inst = generate_planted(500, 40, 0.5, 1.0, 2).unwrap();
        let seed = VertexSet::from_indices(500, inst.planted.iter().take(11)).unwrap();
        let res = solve_seeded(&inst.graph, 40, &seed, None, Some(&inst.planted)).unwrap();
        assert_eq!(res.mode, Mode::Seeded);
        assert_eq!(res.success, Some(true));
        let res = solve_seeded(&Graph::empty(500), 40, &seed, None, None).unwrap();
        assert_eq!(res.failure.unwrap().phase, Phase::Phase3);
        assert_eq!(res.success, None);
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = SolveConfig::new(
            Algorithm::Dense(DenseParams { p: 0.3, q: 0.8 }),
            &CliqueParams::basic(0.4, 1.0, 3.0),
        );
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<SolveConfig>(&text).unwrap(), cfg);
    }
}
