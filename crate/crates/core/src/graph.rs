//! Simple undirected graphs on dense vertex ids `0..n`, stored as one `u64`
//! adjacency bitset per vertex.
//!
//! Graphs are immutable once built. Every constructor returns a fresh value,
//! so a `Graph` can be shared freely between worker threads.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest order a [`Graph`] can hold (one `u64` word per adjacency row).
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("vertex {0} belongs to the excluded set")]
    VertexInExcludedSet(usize),
    #[error("vertex sets overlap on {0:?}")]
    OverlappingSets(VertexSet),
    #[error("a self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("cliques in a disjoint union need at least one vertex")]
    EmptyCliqueSize,
    #[error("labeled enumeration is capped at order {cap}, got {requested}")]
    EnumerationCap { requested: usize, cap: usize },
}

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertex ids, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, .., n-1}`.
    #[inline]
    pub fn range(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    /// `{start, .., end-1}`.
    pub fn interval(start: usize, end: usize) -> Self {
        VertexSet(full_mask(end) & !full_mask(start))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge with normalized endpoints `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Fails on a loop.
    pub fn new(x: usize, y: usize) -> Result<Self, GraphError> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Edge { u: x, v: y }),
            std::cmp::Ordering::Greater => Ok(Edge { u: y, v: x }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(x)),
        }
    }

    pub fn contains(self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of deleting vertices: the induced subgraph plus the id mapping.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original_ids[new] = old`.
    pub original_ids: Vec<usize>,
}

impl InducedSubgraph {
    /// Maps a vertex set of the subgraph back to the parent's labeling.
    pub fn lift(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.original_ids[v]).collect()
    }
}

impl Graph {
    /// The edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (x, y) in edges {
            for w in [x, y] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if x == y {
                return Err(GraphError::SelfLoop(x));
            }
            g.adj[x] |= 1 << y;
            g.adj[y] |= 1 << x;
        }
        Ok(g)
    }

    /// Builds from raw adjacency rows (bit `v` of row `u` marks `uv`),
    /// symmetrizing, truncating to `0..rows.len()` and dropping loops.
    pub fn from_rows(mut adj: Vec<u64>) -> Self {
        let n = adj.len();
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        for (v, row) in adj.iter_mut().enumerate() {
            *row &= full_mask(n) & !(1 << v);
        }
        for u in 0..n {
            for v in VertexSet(adj[u]).iter() {
                adj[v] |= 1 << u;
            }
        }
        Graph { adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| VertexSet(row & !full_mask(u + 1)).iter().map(move |v| Edge { u, v }))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| self.degree(v) + 1 == n)
    }

    fn check_subset(&self, set: VertexSet) -> Result<(), GraphError> {
        match set.difference(self.vertices()).first() {
            Some(v) => Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            }),
            None => Ok(()),
        }
    }

    /// Removes `set` and relabels the survivors `0..` in their original order.
    pub fn delete_vertices(&self, set: VertexSet) -> Result<InducedSubgraph, GraphError> {
        self.check_subset(set)?;
        let original_ids: Vec<usize> = self.vertices().difference(set).iter().collect();
        let adj = original_ids
            .iter()
            .map(|&old| {
                let row = self.adj[old];
                original_ids
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| row >> w & 1 == 1)
                    .fold(0u64, |acc, (new, _)| acc | 1 << new)
            })
            .collect();
        Ok(InducedSubgraph {
            graph: Graph { adj },
            original_ids,
        })
    }

    /// Number of neighbours of `v` outside `excluded`, i.e. the degree of `v` in `G - excluded`.
    pub fn deg_avoiding(&self, v: usize, excluded: VertexSet) -> Result<usize, GraphError> {
        if v >= self.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        if excluded.contains(v) {
            return Err(GraphError::VertexInExcludedSet(v));
        }
        Ok((self.adj[v] & !excluded.0).count_ones() as usize)
    }

    /// `e(X, Y)`: edges with one end in each of two disjoint sets.
    pub fn edges_between(&self, xs: VertexSet, ys: VertexSet) -> Result<usize, GraphError> {
        self.check_subset(xs)?;
        self.check_subset(ys)?;
        if !xs.is_disjoint(ys) {
            return Err(GraphError::OverlappingSets(xs.intersection(ys)));
        }
        Ok(xs.iter().map(|x| (self.adj[x] & ys.0).count_ones() as usize).sum())
    }

    /// Edges with both ends inside `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter()
            .map(|v| (self.adj[v] & set.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v] & set.0 == 0)
    }

    /// Minimum degree; `None` for the empty graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order()).map(|v| self.degree(v)).min()
    }
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for v in 0..n {
        g.adj[v] = full_mask(n) & !(1 << v);
    }
    Ok(g)
}

/// The cycle `C_n` on `0 - 1 - .. - (n-1) - 0`; for `n < 3` this is a path.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let edges = (0..n).map(|v| (v, (v + 1) % n)).filter(|&(x, y)| x != y);
    let mut g = Graph::empty(n)?;
    for (x, y) in edges {
        g.adj[x] |= 1 << y;
        g.adj[y] |= 1 << x;
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>()).expect("petersen graph is well formed")
}

/// `m K_t`: `m` disjoint copies of `K_t`, copy `i` on ids `i*t .. (i+1)*t`.
pub fn disjoint_clique_union(copies: usize, clique_size: usize) -> Result<Graph, GraphError> {
    if clique_size == 0 {
        return Err(GraphError::EmptyCliqueSize);
    }
    let n = copies * clique_size;
    let mut g = Graph::empty(n)?;
    for c in 0..copies {
        let block = VertexSet::interval(c * clique_size, (c + 1) * clique_size);
        for v in block.iter() {
            g.adj[v] = block.0 & !(1 << v);
        }
    }
    Ok(g)
}

/// `G1 ∨ G2`; `g1` keeps ids `0..n1`, `g2` is shifted to `n1..n1+n2`.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let (n1, n2) = (g1.order(), g2.order());
    let mut g = Graph::empty(n1 + n2)?;
    let left = VertexSet::range(n1).bits();
    let right = VertexSet::interval(n1, n1 + n2).bits();
    for v in 0..n1 {
        g.adj[v] = g1.adj[v] | right;
    }
    for v in 0..n2 {
        g.adj[n1 + v] = g2.adj[v] << n1 | left;
    }
    Ok(g)
}

/// All `k`-element subsets of `{0..n}` in increasing bitmask order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = (k <= n).then(|| (1u128 << k) - 1);
    std::iter::from_fn(move || {
        let x = next?;
        next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let y = (((r ^ x) >> 2) / c) | r;
            (y < limit).then_some(y)
        };
        Some(VertexSet(x as u64))
    })
}

/// Hard cap for [`enumerate_graphs`].
pub const ENUMERATION_CAP: usize = 7;

/// Every labeled graph of order `n`.
///
/// The `i`-th graph has edge `(pair_k)` present iff bit `k` of `i` is set,
/// where pairs are ordered as in the graph6 upper-triangle layout
/// (`(0,1), (0,2), (1,2), (0,3), ..`).
pub fn enumerate_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    if n > ENUMERATION_CAP {
        return Err(GraphError::EnumerationCap {
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Ok(LabeledGraphs {
        n,
        total: 1u64 << pairs.len(),
        next: 0,
        pairs,
    })
}

#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl LabeledGraphs {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The graph at position `index` of the enumeration.
    pub fn graph_at(&self, index: u64) -> Graph {
        let mut adj = vec![0u64; self.n];
        for (bit, &(i, j)) in self.pairs.iter().enumerate() {
            if index >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        Graph { adj }
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.total {
            return None;
        }
        let g = self.graph_at(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}
