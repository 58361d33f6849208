//! Core extraction and expansion of a clique seed.

use crate::analytics::DenseParams;
use crate::error::{invalid, Error, Result};
use crate::graph::ops::degrees_unchecked;
use crate::graph::{common_neighborhood, induced_subgraph, top_k_by_degree, Graph, VertexSet};

/// Take the `k_t` highest-degree vertices of `g` and keep those with at
/// least `fraction · k_t` neighbours among them.
pub fn extract_core_with(g: &Graph, k_t: usize, fraction: f64) -> Result<VertexSet> {
    if k_t == 0 || k_t > g.n() {
        return invalid(format!("k_t = {k_t} with {} vertices left", g.n()));
    }
    let top = top_k_by_degree(g, &g.vertices(), k_t)?;
    let cut = fraction * k_t as f64;
    let mut core = VertexSet::empty(g.n());
    for (v, d) in degrees_unchecked(g, &top, &top) {
        if d as f64 >= cut {
            core.insert(v);
        }
    }
    if core.is_empty() {
        return Err(Error::CoreExtractionFailed(format!(
            "no vertex has {cut} neighbours among the top {k_t}"
        )));
    }
    Ok(core)
}

/// Core extraction with the three-quarter cut used for cliques.
pub fn extract_core(g: &Graph, k_t: usize) -> Result<VertexSet> {
    extract_core_with(g, k_t, 0.75)
}

/// Grow a seed inside the planted set to the whole set: restrict to the
/// seed plus its common neighbourhood and keep the `k` highest degrees there.
pub fn recover_from_seed(g: &Graph, seed: &VertexSet, k: usize) -> Result<VertexSet> {
    seed.same_universe(g.n())?;
    if seed.is_empty() {
        return invalid("seed set is empty");
    }
    if k > g.n() {
        return invalid(format!("k = {k} exceeds n = {}", g.n()));
    }
    let u = seed.union(&common_neighborhood(g, seed)?);
    if u.len() < k {
        return Err(Error::SeedTooWeak(format!(
            "seed of {} leaves {} candidates for a {k}-set",
            seed.len(),
            u.len()
        )));
    }
    let (sub, map) = induced_subgraph(g, &u)?;
    let top = top_k_by_degree(&sub, &sub.vertices(), k)?;
    Ok(map.lift(&top, g.n()))
}

/// Seed expansion for the dense model. `K' = seed ∪ {v : d_seed(v) >= m·|seed|}`
/// and the result is `{v : d_K'(v) >= m·k}`, with `m = (p+q)/2`.
pub fn dense_recover_from_seed(
    g: &Graph,
    seed: &VertexSet,
    k: usize,
    dense: DenseParams,
) -> Result<VertexSet> {
    if !(dense.p >= 0.0 && dense.p < dense.q && dense.q <= 1.0) {
        return invalid(format!(
            "need 0 <= p < q <= 1, got p = {}, q = {}",
            dense.p, dense.q
        ));
    }
    seed.same_universe(g.n())?;
    if seed.is_empty() {
        return invalid("seed set is empty");
    }
    if k > g.n() {
        return invalid(format!("k = {k} exceeds n = {}", g.n()));
    }
    let all = g.vertices();
    let m = dense.midpoint();
    let cut = m * seed.len() as f64;
    let mut widened = seed.clone();
    for (v, d) in degrees_unchecked(g, &all, seed) {
        if d as f64 >= cut {
            widened.insert(v);
        }
    }
    let cut = m * k as f64;
    let mut found = VertexSet::empty(g.n());
    for (v, d) in degrees_unchecked(g, &all, &widened) {
        if d as f64 >= cut {
            found.insert(v);
        }
    }
    if found.is_empty() {
        return Err(Error::SeedTooWeak(format!(
            "no vertex reaches {cut} neighbours in the widened seed"
        )));
    }
    Ok(found)
}

/// Keep the `k` vertices of highest degree.
pub fn kucera_topk(g: &Graph, k: usize) -> Result<VertexSet> {
    top_k_by_degree(g, &g.vertices(), k)
}
