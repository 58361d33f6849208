//! Seeded generation of `G(n, p, k, q)`.
//!
//! Draw order is fixed: first the planted set (partial Fisher-Yates over
//! `0..n`, first `k` slots), then one uniform real per unordered pair in
//! canonical order `(0,1), (0,2), .., (0,n-1), (1,2), ..`. A pair with both
//! ends planted is an edge when the draw is `< q`, any other pair when it is
//! `< p`.

use super::bits::{self, transpose64, WORD_BITS};
use super::{Graph, VertexSet};
use crate::error::{invalid, Result};
use crate::rng::{bernoulli_cut, rng_from_seed, sample_distinct};
use rand_core::RngCore;
use serde::{Deserialize, Serialize};

/// A random graph together with the hidden set planted in it.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub planted: VertexSet,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
}

/// Generation parameters and hidden set, as written to the JSON sidecar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
    pub planted: Vec<usize>,
}

impl PlantedInstance {
    pub fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            n: self.n,
            k: self.k,
            p: self.p,
            q: self.q,
            seed: self.seed,
            planted: self.planted.to_vec(),
        }
    }

    /// Reassemble an instance from a decoded graph and its sidecar.
    pub fn from_parts(graph: Graph, meta: &InstanceMeta) -> Result<Self> {
        if graph.n() != meta.n {
            return invalid(format!(
                "sidecar n = {} but graph has {} vertices",
                meta.n,
                graph.n()
            ));
        }
        let planted = VertexSet::from_indices(meta.n, meta.planted.iter().copied())?;
        if planted.len() != meta.k {
            return invalid(format!(
                "sidecar k = {} but {} planted vertices",
                meta.k,
                planted.len()
            ));
        }
        Ok(PlantedInstance {
            graph,
            planted,
            n: meta.n,
            k: meta.k,
            p: meta.p,
            q: meta.q,
            seed: meta.seed,
        })
    }
}

fn check_prob(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return invalid(format!("{name} = {x} is not a probability"));
    }
    Ok(())
}

/// Sample `G(n, p, k, q)`: a uniform `k`-subset is planted, pairs inside it
/// are edges with probability `q`, all other pairs with probability `p`.
pub fn generate_planted(n: usize, k: usize, p: f64, q: f64, seed: u64) -> Result<PlantedInstance> {
    if k > n {
        return invalid(format!("k = {k} exceeds n = {n}"));
    }
    check_prob("p", p)?;
    check_prob("q", q)?;
    if p >= q {
        return invalid(format!("need p < q, got p = {p}, q = {q}"));
    }

    let mut rng = rng_from_seed(seed);
    let planted = VertexSet::from_indices(n, sample_distinct(&mut rng, n, k))?;

    let stride = bits::words_for(n);
    let mut rows = vec![0u64; n * stride];
    let cut_p = bernoulli_cut(p);
    let cut_q = bernoulli_cut(q);

    for u in 0..n {
        let row = &mut rows[u * stride..(u + 1) * stride];
        let u_planted = planted.contains(u);
        let first = u + 1;
        for w in first / WORD_BITS..stride {
            let lo = (w * WORD_BITS).max(first);
            let hi = ((w + 1) * WORD_BITS).min(n);
            let pmask = if u_planted { planted.words()[w] } else { 0 };
            let mut word = 0u64;
            for v in lo..hi {
                let b = v % WORD_BITS;
                let cut = if (pmask >> b) & 1 == 1 { cut_q } else { cut_p };
                word |= ((rng.next_u64() >> 11 < cut) as u64) << b;
            }
            row[w] = word;
        }
    }

    mirror_upper(&mut rows, n, stride);
    let graph = Graph::from_rows_unchecked(n, rows);
    debug_assert!(n > 512 || graph.check_invariants().is_ok());
    Ok(PlantedInstance {
        graph,
        planted,
        n,
        k,
        p,
        q,
        seed,
    })
}

/// Copy the strict upper triangle into the lower one using 64x64 block
/// transposes.
fn mirror_upper(rows: &mut [u64], n: usize, stride: usize) {
    let mut block = [0u64; 64];
    for bi in 0..stride {
        for bj in bi..stride {
            // gather block (bi, bj): rows 64*bi.., word bj
            for (r, slot) in block.iter_mut().enumerate() {
                let v = bi * WORD_BITS + r;
                *slot = if v < n { rows[v * stride + bj] } else { 0 };
            }
            transpose64(&mut block);
            // scatter into block (bj, bi)
            for (r, &word) in block.iter().enumerate() {
                let v = bj * WORD_BITS + r;
                if v < n {
                    rows[v * stride + bi] |= word;
                }
            }
        }
    }
}
