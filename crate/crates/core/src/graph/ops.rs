use super::{bits, Graph, VertexSet};
use crate::error::{invalid, Result};
use rayon::prelude::*;

/// Below this many query vertices the batched degree loop stays sequential.
const PAR_MIN_QUERIES: usize = 2048;

/// `d_S(v)`: number of neighbours of `v` inside `s`.
pub fn degree_into(g: &Graph, v: usize, s: &VertexSet) -> Result<usize> {
    s.same_universe(g.n())?;
    if v >= g.n() {
        return invalid(format!("vertex {v} out of range for n = {}", g.n()));
    }
    Ok(bits::and_count(g.row(v), s.words()))
}

/// `(v, d_S(v))` for every `v` in `a`, ascending by vertex.
pub fn degrees_into_all(g: &Graph, a: &VertexSet, s: &VertexSet) -> Result<Vec<(usize, usize)>> {
    a.same_universe(g.n())?;
    s.same_universe(g.n())?;
    Ok(degrees_unchecked(g, a, s))
}

pub(crate) fn degrees_unchecked(g: &Graph, a: &VertexSet, s: &VertexSet) -> Vec<(usize, usize)> {
    let mask = s.words();
    let degree = |v: usize| (v, bits::and_count(g.row(v), mask));
    if a.len() >= PAR_MIN_QUERIES {
        let members = a.to_vec();
        members.into_par_iter().map(degree).collect()
    } else {
        a.iter().map(degree).collect()
    }
}

/// Sorted-order bijection between the vertices of an induced subgraph and
/// the vertices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    to_parent: Vec<usize>,
}

impl IndexMap {
    pub fn identity(n: usize) -> Self {
        IndexMap {
            to_parent: (0..n).collect(),
        }
    }

    pub(crate) fn from_members(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        IndexMap { to_parent: members }
    }

    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }

    /// Parent id of new vertex `v`.
    #[inline]
    pub fn parent(&self, v: usize) -> usize {
        self.to_parent[v]
    }

    /// New id of parent vertex `u`, if `u` was kept.
    pub fn child(&self, u: usize) -> Option<usize> {
        self.to_parent.binary_search(&u).ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.to_parent
    }

    /// `self` maps a grandchild graph into its parent, `outer` maps that
    /// parent into the root; the result maps the grandchild into the root.
    pub fn compose(&self, outer: &IndexMap) -> IndexMap {
        IndexMap {
            to_parent: self.to_parent.iter().map(|&v| outer.parent(v)).collect(),
        }
    }

    /// Lift a set over the child vertices into the parent universe.
    pub fn lift(&self, set: &VertexSet, parent_n: usize) -> VertexSet {
        let mut out = VertexSet::empty(parent_n);
        for v in set.iter() {
            out.insert(self.to_parent[v]);
        }
        out
    }

    /// Restrict a parent set to the kept vertices, in child ids.
    pub fn restrict(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.len());
        for (i, &u) in self.to_parent.iter().enumerate() {
            if set.contains(u) {
                out.insert(i);
            }
        }
        out
    }
}

/// Subgraph induced by `u`, relabelled `0..|u|` in ascending order.
pub fn induced_subgraph(g: &Graph, u: &VertexSet) -> Result<(Graph, IndexMap)> {
    u.same_universe(g.n())?;
    let members = u.to_vec();
    let m = members.len();
    // rank[old] = new index, valid only for members
    let mut rank = vec![usize::MAX; g.n()];
    for (i, &v) in members.iter().enumerate() {
        rank[v] = i;
    }
    let mut sub = Graph::empty(m);
    let mask = u.words();
    for (i, &v) in members.iter().enumerate() {
        let row = g.row(v);
        let out = sub.row_mut(i);
        for (w, (&r, &k)) in row.iter().zip(mask).enumerate() {
            let mut word = r & k;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                bits::set(out, rank[w * bits::WORD_BITS + b]);
            }
        }
    }
    Ok((sub, IndexMap::from_members(members)))
}

/// Vertices outside `t` adjacent to every member of `t`.
pub fn common_neighborhood(g: &Graph, t: &VertexSet) -> Result<VertexSet> {
    t.same_universe(g.n())?;
    if t.is_empty() {
        return invalid("common neighbourhood of an empty set");
    }
    let mut acc = vec![!0u64; g.stride()];
    for v in t.iter() {
        for (a, &r) in acc.iter_mut().zip(g.row(v)) {
            *a &= r;
        }
    }
    for (a, &m) in acc.iter_mut().zip(t.words()) {
        *a &= !m;
    }
    Ok(VertexSet::from_words(g.n(), acc))
}

/// The `k` members of `u` with the largest degree in `g`; ties go to the
/// smaller vertex index.
pub fn top_k_by_degree(g: &Graph, u: &VertexSet, k: usize) -> Result<VertexSet> {
    u.same_universe(g.n())?;
    if k > u.len() {
        return invalid(format!("k = {k} exceeds candidate count {}", u.len()));
    }
    let mut ranked: Vec<(usize, usize)> = u.iter().map(|v| (v, g.degree(v))).collect();
    Ok(select_top(&mut ranked, k, g.n()))
}

/// Keep the first `k` of `(vertex, value)` under (value desc, vertex asc).
pub(crate) fn select_top(ranked: &mut [(usize, usize)], k: usize, universe: usize) -> VertexSet {
    let order = |a: &(usize, usize), b: &(usize, usize)| b.1.cmp(&a.1).then(a.0.cmp(&b.0));
    if k < ranked.len() && k > 0 {
        ranked.select_nth_unstable_by(k - 1, order);
    }
    let mut out = VertexSet::empty(universe);
    for &(v, _) in ranked.iter().take(k) {
        out.insert(v);
    }
    out
}

/// Every pair of `u` adjacent; sets of size at most one are cliques.
pub fn is_clique(g: &Graph, u: &VertexSet) -> bool {
    if u.universe() != g.n() {
        return false;
    }
    let need = u.len().saturating_sub(1);
    u.iter()
        .all(|v| bits::and_count(g.row(v), u.words()) == need)
}
