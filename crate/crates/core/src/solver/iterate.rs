//! One shrinking step and the phase-one loop.

use super::TraceEntry;
use crate::error::{invalid, Error, Result};
use crate::graph::ops::degrees_unchecked;
use crate::graph::{induced_subgraph, Graph, IndexMap, VertexSet};
use crate::rng::unit_f64;
use rand_core::RngCore;

/// Degree cut deciding which vertices outside the sample survive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdRule {
    /// `d_S(v) >= |S|/2 + β√|S|/2`.
    Basic { beta: f64 },
    /// Refine `S` to `S̃ = {u ∈ S : d_S(u) >= |S|/2 + η√|S|/2}`, then
    /// `d_S̃(v) >= |S̃|/2 + β√|S̃|/2`.
    Variant { beta: f64, eta: f64 },
    /// `d_S(v) >= p|S| + β√(p(1-p)|S|)`.
    Dense { beta: f64, p: f64 },
}

#[inline]
fn half_threshold(size: usize, z: f64) -> f64 {
    let s = size as f64;
    0.5 * s + 0.5 * z * s.sqrt()
}

impl ThresholdRule {
    fn cut(&self, size: usize) -> f64 {
        match *self {
            ThresholdRule::Basic { beta } | ThresholdRule::Variant { beta, .. } => {
                half_threshold(size, beta)
            }
            ThresholdRule::Dense { beta, p } => {
                let s = size as f64;
                p * s + beta * (p * (1.0 - p) * s).sqrt()
            }
        }
    }
}

/// Everything one shrinking step produced.
#[derive(Clone, Debug)]
pub struct IterationOutcome {
    /// The Bernoulli sample `S_i`.
    pub sample: VertexSet,
    /// `S̃_i` under the variant rule.
    pub refined: Option<VertexSet>,
    /// `Ṽ_i`, disjoint from the sample.
    pub survivors: VertexSet,
    /// Subgraph induced by the survivors.
    pub next_graph: Graph,
    pub map: IndexMap,
    /// Surviving planted vertices, when the planted set was supplied.
    pub planted_next: Option<usize>,
}

/// Survivors of a given sample: vertices outside `sample` whose degree into
/// the reference set meets the rule. Only edges with at least one end in
/// `sample` are read.
pub fn survivors_for_sample(
    g: &Graph,
    sample: &VertexSet,
    rule: ThresholdRule,
) -> Result<(VertexSet, Option<VertexSet>)> {
    sample.same_universe(g.n())?;
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let refined = match rule {
        ThresholdRule::Variant { eta, .. } => {
            let cut = half_threshold(sample.len(), eta);
            let mut refined = VertexSet::empty(g.n());
            for (v, d) in degrees_unchecked(g, sample, sample) {
                if d as f64 >= cut {
                    refined.insert(v);
                }
            }
            if refined.is_empty() {
                return Err(Error::EmptySample);
            }
            Some(refined)
        }
        _ => None,
    };
    let reference = refined.as_ref().unwrap_or(sample);
    let cut = rule.cut(reference.len());
    let mut survivors = VertexSet::empty(g.n());
    for (v, d) in degrees_unchecked(g, &sample.complement(), reference) {
        if d as f64 >= cut {
            survivors.insert(v);
        }
    }
    Ok((survivors, refined))
}

/// Recompute survivors after deleting every edge with both ends outside
/// `sample`; the result must not change.
pub fn check_sample_closure(g: &Graph, sample: &VertexSet, rule: ThresholdRule) -> Result<bool> {
    let mut masked = g.clone();
    for v in 0..g.n() {
        if !sample.contains(v) {
            for (w, &m) in masked.row_mut(v).iter_mut().zip(sample.words()) {
                *w &= m;
            }
        }
    }
    Ok(survivors_for_sample(g, sample, rule)? == survivors_for_sample(&masked, sample, rule)?)
}

fn draw_sample<R: RngCore + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for v in 0..n {
        if unit_f64(rng) < alpha {
            s.insert(v);
        }
    }
    s
}

pub(crate) fn step<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    rule: ThresholdRule,
    rng: &mut R,
    planted: Option<&VertexSet>,
    level: usize,
) -> Result<IterationOutcome> {
    if g.n() < 2 {
        return invalid(format!("cannot iterate on a graph with {} vertices", g.n()));
    }
    if !(alpha > 0.0 && alpha < 1.0) || alpha * (g.n() as f64) < 1.0 {
        return invalid(format!(
            "alpha = {alpha} gives an expected sample below one vertex"
        ));
    }
    let sample = draw_sample(g.n(), alpha, rng);
    let (survivors, refined) = survivors_for_sample(g, &sample, rule)?;
    debug_assert!(g.n() > 256 || check_sample_closure(g, &sample, rule).unwrap_or(false));
    if survivors.is_empty() {
        return Err(Error::IterationCollapse { level });
    }
    let (next_graph, map) = induced_subgraph(g, &survivors)?;
    let planted_next = planted.map(|p| p.intersection_len(&survivors));
    Ok(IterationOutcome {
        sample,
        refined,
        survivors,
        next_graph,
        map,
        planted_next,
    })
}

/// One step with the basic threshold.
pub fn iterate_once<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    beta: f64,
    rng: &mut R,
) -> Result<IterationOutcome> {
    step(g, alpha, ThresholdRule::Basic { beta }, rng, None, 0)
}

/// One step with the refined reference set.
pub fn iterate_once_variant<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    beta: f64,
    eta: f64,
    rng: &mut R,
) -> Result<IterationOutcome> {
    step(g, alpha, ThresholdRule::Variant { beta, eta }, rng, None, 0)
}

/// One step with an arbitrary rule, tracing the planted set if given
/// (`planted` is over the vertices of `g`).
pub fn iterate_with<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    rule: ThresholdRule,
    rng: &mut R,
    planted: Option<&VertexSet>,
) -> Result<IterationOutcome> {
    if let Some(p) = planted {
        p.same_universe(g.n())?;
    }
    step(g, alpha, rule, rng, planted, 0)
}

/// Output of the shrinking phase.
#[derive(Clone, Debug)]
pub struct Phase1Output {
    /// `G_t`.
    pub graph: Graph,
    /// Maps `G_t` vertices to the input graph.
    pub map: IndexMap,
    /// One entry per level `0..=t`.
    pub trace: Vec<TraceEntry>,
}

/// Apply `iterations` shrinking steps.
pub fn run_phase1<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    rule: ThresholdRule,
    iterations: usize,
    rng: &mut R,
    planted: Option<&VertexSet>,
) -> Result<Phase1Output> {
    let mut trace = Vec::new();
    let (graph, map) = run_phase1_traced(g, alpha, rule, iterations, rng, planted, &mut trace)?;
    Ok(Phase1Output { graph, map, trace })
}

/// Phase one, appending to `trace` as it goes so a failing run keeps the
/// levels it completed.
pub(crate) fn run_phase1_traced<R: RngCore + ?Sized>(
    g: &Graph,
    alpha: f64,
    rule: ThresholdRule,
    iterations: usize,
    rng: &mut R,
    planted: Option<&VertexSet>,
    trace: &mut Vec<TraceEntry>,
) -> Result<(Graph, IndexMap)> {
    if let Some(p) = planted {
        p.same_universe(g.n())?;
    }
    // borrow the input until the first step produces a graph of our own
    let mut owned: Option<Graph> = None;
    let mut to_root = IndexMap::identity(g.n());
    let mut planted_local = planted.cloned();
    trace.push(TraceEntry::level(g.n(), planted.map(VertexSet::len)));

    for level in 0..iterations {
        let current = owned.as_ref().unwrap_or(g);
        let out =
            step(current, alpha, rule, rng, planted_local.as_ref(), level).map_err(
                |e| match e {
                    Error::IterationCollapse { .. } => Error::IterationCollapse { level },
                    other => other,
                },
            )?;
        let entry = trace.last_mut().expect("trace starts non-empty");
        entry.sample = Some(out.sample.len());
        entry.refined = out.refined.as_ref().map(VertexSet::len);

        planted_local = planted_local.map(|p| out.map.restrict(&p));
        to_root = out.map.compose(&to_root);
        trace.push(TraceEntry::level(out.next_graph.n(), out.planted_next));
        owned = Some(out.next_graph);
    }
    Ok((owned.unwrap_or_else(|| g.clone()), to_root))
}
