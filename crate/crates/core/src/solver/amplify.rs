use super::solve::{solve, SolveConfig};
use super::{Phase, RecoveryResult};
use crate::error::{invalid, Error, Result};
use crate::graph::{common_neighborhood, induced_subgraph, is_clique, Graph, VertexSet};
use crate::rng::sample_distinct;
use rand_core::RngCore;
use std::time::Instant;

/// Repeatedly restrict to `r` random vertices plus their common
/// neighbourhood and solve there, until a candidate of size `k` verifies as
/// a clique in `g` or `max_trials` run out.
pub fn amplify<R: RngCore + ?Sized>(
    g: &Graph,
    k: usize,
    r: usize,
    config: &SolveConfig,
    rng: &mut R,
    max_trials: usize,
    planted: Option<&VertexSet>,
) -> Result<RecoveryResult> {
    if r == 0 || k < r {
        return invalid(format!("need 1 <= r <= k, got r = {r}, k = {k}"));
    }
    if k > g.n() {
        return invalid(format!("k = {k} exceeds n = {}", g.n()));
    }
    if let Some(p) = planted {
        p.same_universe(g.n())?;
    }
    config.validate()?;
    let start = Instant::now();
    let n = g.n();
    let mut last = RecoveryResult::new(config.algorithm.mode(), n);

    for trial in 1..=max_trials {
        let picks = sample_distinct(rng, n, r);
        let t = VertexSet::from_indices(n, picks)?;
        if !is_clique(g, &t) {
            continue;
        }
        let u = t.union(&common_neighborhood(g, &t)?);
        if u.len() < k {
            continue;
        }
        let (sub, map) = induced_subgraph(g, &u)?;
        let inner_planted = planted.filter(|p| p.is_subset(&u)).map(|p| map.restrict(p));
        let inner = solve(&sub, k, config, rng, inner_planted.as_ref())?;
        let mut res = RecoveryResult::new(config.algorithm.mode(), n);
        res.timings = last.timings;
        res.timings.add(&inner.timings);
        let candidate = map.lift(&inner.candidate, n);
        let verified = inner.failure.is_none() && candidate.len() == k && is_clique(g, &candidate);
        res.trace = inner.trace;
        res.t = inner.t;
        res.k_t = inner.k_t;
        res.core = inner.core.map(|c| map.lift(&c, n));
        if verified {
            res.candidate = candidate;
            res.trials = Some(trial);
            res.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
            res.judge(planted);
            return Ok(res);
        }
        last = res;
    }

    last.candidate = VertexSet::empty(n);
    last.trials = Some(max_trials);
    last.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut last = last.fail(
        Phase::Amplify,
        Error::AmplificationExhausted { trials: max_trials },
    );
    last.judge(planted);
    Ok(last)
}
