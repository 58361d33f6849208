//! Bit-packed undirected graphs, vertex sets, and the degree primitives the
//! recovery phases are built from.

pub(crate) mod bits;
mod generate;
pub mod io;
pub(crate) mod ops;

pub use generate::{generate_planted, InstanceMeta, PlantedInstance};
pub use ops::{
    common_neighborhood, degree_into, degrees_into_all, induced_subgraph, is_clique,
    top_k_by_degree, IndexMap,
};

use crate::error::{invalid, Result};
use bits::{words_for, WORD_BITS};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Simple undirected graph on `0..n` stored as an `n x n` bit matrix.
///
/// Each row occupies `ceil(n / 64)` words; row `v` bit `u` is set iff `{u, v}`
/// is an edge. The matrix is symmetric, the diagonal is zero and the padding
/// bits past column `n - 1` are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; n * stride],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            let row = g.row_mut(v);
            for w in row.iter_mut() {
                *w = !0;
            }
            if let Some(last) = row.last_mut() {
                *last &= bits::tail_mask(n);
            }
            bits::clear(row, v);
        }
        g
    }

    /// Build from an undirected edge list. Self-loops and out-of-range
    /// endpoints are rejected; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                return invalid(format!("self-loop at {u}"));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Takes ownership of raw row words, validating the matrix invariants.
    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> std::result::Result<Self, String> {
        let stride = words_for(n);
        if rows.len() != n * stride {
            return Err(format!("expected {} words, got {}", n * stride, rows.len()));
        }
        let g = Graph { n, stride, rows };
        g.check_invariants()?;
        Ok(g)
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u64>) -> Self {
        let stride = words_for(n);
        debug_assert_eq!(rows.len(), n * stride);
        Graph { n, stride, rows }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        bits::set(self.row_mut(u), v);
        bits::set(self.row_mut(v), u);
    }

    /// Symmetry, empty diagonal and zero padding.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let tail = bits::tail_mask(self.n);
        for v in 0..self.n {
            let row = self.row(v);
            if bits::get(row, v) {
                return Err(format!("self-loop at {v}"));
            }
            if let Some(&last) = row.last() {
                if last & !tail != 0 {
                    return Err(format!("nonzero padding in row {v}"));
                }
            }
            for u in bits::ones(row) {
                if !bits::get(self.row(u), v) {
                    return Err(format!("asymmetric entry ({v}, {u})"));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub(crate) fn raw_rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(v))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Every vertex of the graph as a set.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .finish()
    }
}

/// Subset of `0..universe` as a bitmap with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; words_for(universe)];
        if let Some(last) = words.last_mut() {
            *last &= bits::tail_mask(universe);
        }
        VertexSet {
            universe,
            words,
            len: universe,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Result<Self> {
        let mut s = VertexSet::empty(universe);
        for v in items {
            if v >= universe {
                return invalid(format!("vertex {v} outside universe of size {universe}"));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(universe: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(universe));
        if let Some(last) = words.last_mut() {
            *last &= bits::tail_mask(universe);
        }
        let len = bits::count(&words);
        VertexSet {
            universe,
            words,
            len,
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && bits::get(&self.words, v)
    }

    /// Returns whether `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        if bits::get(&self.words, v) {
            return false;
        }
        bits::set(&mut self.words, v);
        self.len += 1;
        true
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        bits::clear(&mut self.words, v);
        self.len -= 1;
        true
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_words(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(
            self.universe, other.universe,
            "vertex set universe mismatch"
        );
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let words = self.words.iter().map(|w| !w).collect();
        VertexSet::from_words(self.universe, words)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        assert_eq!(
            self.universe, other.universe,
            "vertex set universe mismatch"
        );
        bits::and_count(&self.words, &other.words)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.universe == other.universe
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub(crate) fn same_universe(&self, n: usize) -> Result<()> {
        if self.universe != n {
            return invalid(format!(
                "vertex set universe {} does not match graph order {n}",
                self.universe
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({}/{}) ", self.len, self.universe)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as `{ "universe": n, "members": [..] }`.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            universe: usize,
            members: Vec<usize>,
        }
        Repr {
            universe: self.universe,
            members: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            universe: usize,
            members: Vec<usize>,
        }
        let r = Repr::deserialize(d)?;
        VertexSet::from_indices(r.universe, r.members).map_err(serde::de::Error::custom)
    }
}

#[allow(dead_code)]
const _: () = assert!(WORD_BITS == 64);
