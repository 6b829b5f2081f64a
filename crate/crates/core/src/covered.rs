//! Subset characterization of fractional [a,b]-covered graphs.
//!
//! For `X ⊆ V(H)` let `Y = {y ∉ X : d_{H-X}(y) <= a}` and
//! `θ(X) = b|X| + d_{H-X}(Y) - a|Y|`. `H` is fractional [a,b]-covered iff
//! `θ(X) >= ε(X)` for every `X`, where `ε ∈ {0, 1, 2}` is computed by
//! [`epsilon`]. `Y` is always derived from `X`; it is never accepted as input.
//!
//! Subsets are scanned as `n`-bit counters `0..2^n`, so the reported failure
//! is the one with the smallest mask. Parallel scans split the counter range
//! into contiguous chunks and keep the first failing chunk, which makes the
//! witness independent of the worker count.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{full_mask, subsets_of_size, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveredError {
    #[error("lower bound a = {a} exceeds upper bound b = {b}")]
    InvalidBounds { a: usize, b: usize },
    #[error("cannot delete {k} vertices from a graph of order {n}")]
    TooFewVertices { n: usize, k: usize },
}

/// `(a, b, k)` with `0 <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FactorParams {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

impl FactorParams {
    pub fn new(a: usize, b: usize, k: usize) -> Result<Self, CoveredError> {
        if a > b {
            return Err(CoveredError::InvalidBounds { a, b });
        }
        Ok(FactorParams { a, b, k })
    }

    /// `(a, b)` with `k = 0`.
    pub fn covered(a: usize, b: usize) -> Result<Self, CoveredError> {
        Self::new(a, b, 0)
    }
}

/// How to run the subset scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Serial,
    /// Use the current rayon pool.
    Rayon,
}

/// A violated instance of the subset condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    #[serde(rename = "X")]
    pub x: VertexSet,
    #[serde(rename = "Y")]
    pub y: VertexSet,
    pub theta: i64,
    pub epsilon: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveredVerdict {
    pub covered: bool,
    pub witness: Option<LemmaWitness>,
}

impl CoveredVerdict {
    fn from_witness(witness: Option<LemmaWitness>) -> Self {
        CoveredVerdict {
            covered: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalWitness {
    /// Deleted vertices.
    #[serde(rename = "U")]
    pub deleted: VertexSet,
    /// Verdict for `G - U`, in the labeling of `G`.
    pub inner: CoveredVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalVerdict {
    pub critical_covered: bool,
    pub witness: Option<CriticalWitness>,
}

/// Per-vertex degrees into `V - X` for one fixed `X`.
struct Split {
    y: VertexSet,
    /// Members of `Y` with `d_{H-X}(y) = a` exactly.
    y_tight: VertexSet,
    /// `d_{H-X}(Y)`.
    y_degree_sum: usize,
}

#[inline]
fn split(rows: &[u64], all: u64, x: u64, a: usize) -> Split {
    let mut y = 0u64;
    let mut y_tight = 0u64;
    let mut sum = 0usize;
    let mut rest = all & !x;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (rows[v] & !x).count_ones() as usize;
        if d <= a {
            y |= 1 << v;
            sum += d;
            if d == a {
                y_tight |= 1 << v;
            }
        }
    }
    Split {
        y: VertexSet::from_bits(y),
        y_tight: VertexSet::from_bits(y_tight),
        y_degree_sum: sum,
    }
}

#[inline]
fn epsilon_of(rows: &[u64], all: u64, x: u64, s: &Split) -> u8 {
    let mut neighbourhood = 0u64;
    let mut xs = x;
    while xs != 0 {
        let v = xs.trailing_zeros() as usize;
        xs &= xs - 1;
        if rows[v] & x != 0 {
            return 2;
        }
        neighbourhood |= rows[v];
    }
    let w = all & !x & !s.y.bits();
    if neighbourhood & w != 0 || neighbourhood & s.y_tight.bits() != 0 {
        1
    } else {
        0
    }
}

#[inline]
fn theta_of(x: u64, s: &Split, a: usize, b: usize) -> i64 {
    (b * x.count_ones() as usize + s.y_degree_sum) as i64 - (a * s.y.len()) as i64
}

/// `Y = {y ∉ X : d_{H-X}(y) <= a}`.
pub fn determine_y(h: &Graph, x: VertexSet, a: usize) -> VertexSet {
    let all = h.vertices().bits();
    split(h.rows(), all, x.bits() & all, a).y
}

/// `ε(X, Y)` with `Y = determine_y(h, X, a)`:
/// 2 if `X` spans an edge; otherwise 1 if some edge joins `X` to
/// `W = V - X - Y`, or joins `X` to a `y ∈ Y` with `d_{H-X}(y) = a`;
/// otherwise 0.
pub fn epsilon(h: &Graph, x: VertexSet, a: usize) -> u8 {
    let all = h.vertices().bits();
    let x = x.bits() & all;
    let s = split(h.rows(), all, x, a);
    epsilon_of(h.rows(), all, x, &s)
}

/// `θ(X, Y) = b|X| + d_{H-X}(Y) - a|Y|` with `Y = determine_y(h, X, a)`.
pub fn theta(h: &Graph, x: VertexSet, params: FactorParams) -> i64 {
    let all = h.vertices().bits();
    let x = x.bits() & all;
    let s = split(h.rows(), all, x, params.a);
    theta_of(x, &s, params.a, params.b)
}

/// Evaluates one subset; `Some` when it violates the condition.
pub fn lemma_witness(h: &Graph, x: VertexSet, params: FactorParams) -> Option<LemmaWitness> {
    let all = h.vertices().bits();
    evaluate(h.rows(), all, x.bits() & all, params)
}

#[inline]
fn evaluate(rows: &[u64], all: u64, x: u64, p: FactorParams) -> Option<LemmaWitness> {
    let s = split(rows, all, x, p.a);
    let theta = theta_of(x, &s, p.a, p.b);
    // θ >= 2 always passes since ε <= 2.
    if theta >= 2 {
        return None;
    }
    let epsilon = epsilon_of(rows, all, x, &s);
    (theta < epsilon as i64).then(|| LemmaWitness {
        x: VertexSet::from_bits(x),
        y: s.y,
        theta,
        epsilon,
    })
}

fn first_failure(rows: &[u64], all: u64, lo: u64, hi: u64, p: FactorParams) -> Option<LemmaWitness> {
    let mut x = lo;
    loop {
        if let Some(w) = evaluate(rows, all, x, p) {
            return Some(w);
        }
        if x == hi {
            return None;
        }
        x += 1;
    }
}

const CHUNK_BITS: u32 = 12;

/// Decides whether `h` is fractional [a,b]-covered (the `k` field is ignored).
///
/// The empty graph is vacuously covered.
pub fn is_fractional_ab_covered(h: &Graph, params: FactorParams) -> CoveredVerdict {
    is_fractional_ab_covered_with(h, params, Parallelism::Serial)
}

pub fn is_fractional_ab_covered_with(h: &Graph, params: FactorParams, par: Parallelism) -> CoveredVerdict {
    debug_assert!(params.a <= params.b);
    let n = h.order();
    let all = full_mask(n);
    let rows = h.rows();
    let witness = if par == Parallelism::Serial || n <= CHUNK_BITS as usize {
        first_failure(rows, all, 0, all, params)
    } else {
        let chunks = 1u64 << (n as u32 - CHUNK_BITS);
        let width = 1u64 << CHUNK_BITS;
        (0..chunks)
            .into_par_iter()
            .find_map_first(|c| first_failure(rows, all, c * width, c * width + width - 1, params))
    };
    CoveredVerdict::from_witness(witness)
}

/// Decides the (a,b,k)-critical covered property: `g - U` is fractional
/// [a,b]-covered for every `|U| = k`. Deletion sets are tried in increasing
/// mask order and the witness is reported in `g`'s labeling.
pub fn is_fractional_abk_critical_covered(g: &Graph, params: FactorParams) -> Result<CriticalVerdict, CoveredError> {
    is_fractional_abk_critical_covered_with(g, params, Parallelism::Serial)
}

pub fn is_fractional_abk_critical_covered_with(
    g: &Graph,
    params: FactorParams,
    par: Parallelism,
) -> Result<CriticalVerdict, CoveredError> {
    let n = g.order();
    if n <= params.k {
        return Err(CoveredError::TooFewVertices { n, k: params.k });
    }
    if params.a > params.b {
        return Err(CoveredError::InvalidBounds {
            a: params.a,
            b: params.b,
        });
    }
    let check = |deleted: VertexSet| -> Option<CriticalWitness> {
        let sub = g.delete_vertices(deleted).expect("subset of the vertex range");
        let verdict = is_fractional_ab_covered(&sub.graph, params);
        verdict.witness.map(|w| CriticalWitness {
            deleted,
            inner: CoveredVerdict {
                covered: false,
                witness: Some(LemmaWitness {
                    x: sub.lift(w.x),
                    y: sub.lift(w.y),
                    ..w
                }),
            },
        })
    };
    let witness = match par {
        Parallelism::Serial => subsets_of_size(n, params.k).find_map(check),
        Parallelism::Rayon => {
            if params.k == 0 {
                let v = is_fractional_ab_covered_with(g, params, par);
                v.witness.map(|w| CriticalWitness {
                    deleted: VertexSet::EMPTY,
                    inner: CoveredVerdict {
                        covered: false,
                        witness: Some(w),
                    },
                })
            } else {
                let all: Vec<VertexSet> = subsets_of_size(n, params.k).collect();
                all.into_par_iter().find_map_first(check)
            }
        }
    };
    Ok(CriticalVerdict {
        critical_covered: witness.is_none(),
        witness,
    })
}
