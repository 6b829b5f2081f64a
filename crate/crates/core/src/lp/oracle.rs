//! Fractional [a,b]-factor feasibility, optionally with one edge forced to
//! weight 1, decided exactly.
//!
//! Two independent exact routes are provided:
//!
//! * [`OracleMethod::Simplex`]: the edge weights are LP variables in `[0, 1]`
//!   and every vertex contributes `a <= sum <= b`; Phase-I simplex decides it
//!   over [`Rational`].
//! * [`OracleMethod::DoubleCoverFlow`]: the bipartite double cover turns the
//!   problem into an integral circulation. Any fractional factor of `G` maps to
//!   a fractional (hence, by integrality, an integral) flow on the cover, and
//!   averaging the two copies of each edge maps back, so feasibility is
//!   preserved in both directions and the returned weights are half-integral.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::flow::BoundedCirculation;
use crate::graph::{subsets_of_size, Edge, Graph};
use crate::lp::simplex::{FeasibilityProblem, PhaseOneOutcome, Relation};
use crate::scalar::{ratio, Scalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("lower bound a = {a} exceeds upper bound b = {b}")]
    InvalidBounds { a: usize, b: usize },
    #[error("fixed edge {0} is not an edge of the graph")]
    FixedEdgeMissing(Edge),
    #[error("cannot delete {k} vertices from a graph of order {n}")]
    TooFewVertices { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    /// Exact rational Phase-I simplex with Bland's rule.
    #[default]
    Simplex,
    /// Integral circulation on the bipartite double cover.
    DoubleCoverFlow,
}

/// Edge weights `h: E(G) -> [0, 1]`. Absent edges weigh zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalAssignment<T = Rational> {
    values: BTreeMap<Edge, T>,
}

impl<T: Scalar> FractionalAssignment<T> {
    pub fn from_values(values: BTreeMap<Edge, T>) -> Self {
        FractionalAssignment { values }
    }

    pub fn get(&self, e: Edge) -> T {
        self.values.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &T)> {
        self.values.iter()
    }

    /// `sum_{e ∋ v} h(e)`.
    pub fn weighted_degree(&self, v: usize) -> T {
        self.values
            .iter()
            .filter(|(e, _)| e.contains(v))
            .fold(T::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// `E_h`: edges of positive weight.
    pub fn support(&self) -> Vec<Edge> {
        self.values
            .iter()
            .filter(|(_, w)| w.is_positive_tol())
            .map(|(e, _)| *e)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignmentViolation {
    #[error("weight assigned to non-edge {0}")]
    UnknownEdge(Edge),
    #[error("weight of edge {0} outside [0, 1]")]
    OutOfUnitInterval(Edge),
    #[error("weighted degree of vertex {0} below a")]
    DegreeBelow(usize),
    #[error("weighted degree of vertex {0} above b")]
    DegreeAbove(usize),
    #[error("fixed edge {0} does not carry weight 1")]
    FixedEdgeNotSaturated(Edge),
}

/// Replays every constraint of a fractional [a,b]-factor on `h`.
pub fn validate_assignment<T: Scalar>(
    g: &Graph,
    a: usize,
    b: usize,
    fixed: Option<Edge>,
    h: &FractionalAssignment<T>,
) -> Result<(), AssignmentViolation> {
    for (&e, w) in h.iter() {
        if !g.has_edge(e.u, e.v) {
            return Err(AssignmentViolation::UnknownEdge(e));
        }
        if w.is_negative_tol() || (w.clone() - T::one()).is_positive_tol() {
            return Err(AssignmentViolation::OutOfUnitInterval(e));
        }
    }
    if let Some(e) = fixed {
        if !(h.get(e) - T::one()).is_zero_tol() {
            return Err(AssignmentViolation::FixedEdgeNotSaturated(e));
        }
    }
    let (lo, hi) = (T::from_int(a as i64), T::from_int(b as i64));
    for v in 0..g.order() {
        let d = h.weighted_degree(v);
        if (lo.clone() - d.clone()).is_positive_tol() {
            return Err(AssignmentViolation::DegreeBelow(v));
        }
        if (d - hi.clone()).is_positive_tol() {
            return Err(AssignmentViolation::DegreeAbove(v));
        }
    }
    Ok(())
}

fn check_inputs(g: &Graph, a: usize, b: usize, fixed: Option<Edge>) -> Result<(), OracleError> {
    if a > b {
        return Err(OracleError::InvalidBounds { a, b });
    }
    match fixed {
        Some(e) if !g.has_edge(e.u, e.v) => Err(OracleError::FixedEdgeMissing(e)),
        _ => Ok(()),
    }
}

/// The factor LP with the fixed edge (if any) substituted out.
/// Returns the problem and the edge behind each variable.
pub fn factor_lp<T: Scalar>(g: &Graph, a: usize, b: usize, fixed: Option<Edge>) -> (FeasibilityProblem<T>, Vec<Edge>) {
    let free: Vec<Edge> = g.edges().filter(|&e| Some(e) != fixed).collect();
    let mut lp = FeasibilityProblem::new(free.len());
    for v in 0..g.order() {
        let row: Vec<(usize, T)> = free
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains(v))
            .map(|(j, _)| (j, T::one()))
            .collect();
        let forced = fixed.is_some_and(|e| e.contains(v)) as i64;
        lp.add(row.clone(), Relation::Le, T::from_int(b as i64 - forced));
        lp.add(row, Relation::Ge, T::from_int(a as i64 - forced));
    }
    for j in 0..free.len() {
        lp.add(vec![(j, T::one())], Relation::Le, T::one());
    }
    (lp, free)
}

/// Simplex route over any scalar. Use [`Rational`] for verdicts.
pub fn feasible_fractional_factor_with<T: Scalar>(
    g: &Graph,
    a: usize,
    b: usize,
    fixed: Option<Edge>,
) -> Result<Option<FractionalAssignment<T>>, OracleError> {
    check_inputs(g, a, b, fixed)?;
    let (lp, free) = factor_lp::<T>(g, a, b, fixed);
    Ok(match lp.solve() {
        PhaseOneOutcome::Infeasible => None,
        PhaseOneOutcome::Feasible(x) => {
            let mut values: BTreeMap<Edge, T> = free.into_iter().zip(x).collect();
            if let Some(e) = fixed {
                values.insert(e, T::one());
            }
            Some(FractionalAssignment { values })
        }
    })
}

/// A fractional [a,b]-factor of `g` (with `h(fixed) = 1` when given), by
/// exact rational simplex.
pub fn feasible_fractional_factor(
    g: &Graph,
    a: usize,
    b: usize,
    fixed: Option<Edge>,
) -> Result<Option<FractionalAssignment<Rational>>, OracleError> {
    feasible_fractional_factor_with::<Rational>(g, a, b, fixed)
}

fn double_cover_factor(g: &Graph, a: usize, b: usize, fixed: Option<Edge>) -> Option<FractionalAssignment<Rational>> {
    let n = g.order();
    let (source, sink) = (2 * n, 2 * n + 1);
    let (a, b) = (a as i64, b as i64);
    let mut circ = BoundedCirculation::new(2 * n + 2);
    for v in 0..n {
        circ.add_arc(source, v, a, b);
        circ.add_arc(n + v, sink, a, b);
    }
    circ.add_arc(sink, source, 0, 2 * b * n as i64);
    let edges: Vec<(Edge, usize, usize)> = g
        .edges()
        .map(|e| {
            let lower = (Some(e) == fixed) as i64;
            let forward = circ.add_arc(e.u, n + e.v, lower, 1);
            let backward = circ.add_arc(e.v, n + e.u, lower, 1);
            (e, forward, backward)
        })
        .collect();
    let flow = circ.solve()?;
    let values = edges
        .into_iter()
        .map(|(e, f, r)| (e, ratio(flow[f] + flow[r], 2)))
        .collect();
    Some(FractionalAssignment { values })
}

/// Exact feasibility oracle for fractional [a,b]-factors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub method: OracleMethod,
}

impl Oracle {
    pub fn new(method: OracleMethod) -> Self {
        Oracle { method }
    }

    pub fn feasible(
        &self,
        g: &Graph,
        a: usize,
        b: usize,
        fixed: Option<Edge>,
    ) -> Result<Option<FractionalAssignment<Rational>>, OracleError> {
        match self.method {
            OracleMethod::Simplex => feasible_fractional_factor(g, a, b, fixed),
            OracleMethod::DoubleCoverFlow => {
                check_inputs(g, a, b, fixed)?;
                Ok(double_cover_factor(g, a, b, fixed))
            }
        }
    }

    /// `g` has a fractional [a,b]-factor, and one with `h(e) = 1` for every edge `e`.
    ///
    /// The unfixed solve makes edgeless graphs come out covered exactly when
    /// `a = 0`.
    pub fn is_covered(&self, g: &Graph, a: usize, b: usize) -> Result<bool, OracleError> {
        if self.feasible(g, a, b, None)?.is_none() {
            return Ok(false);
        }
        for e in g.edges() {
            if self.feasible(g, a, b, Some(e))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_critical_covered(&self, g: &Graph, a: usize, b: usize, k: usize) -> Result<bool, OracleError> {
        let n = g.order();
        if n <= k {
            return Err(OracleError::TooFewVertices { n, k });
        }
        if a > b {
            return Err(OracleError::InvalidBounds { a, b });
        }
        for removed in subsets_of_size(n, k) {
            let h = g.delete_vertices(removed).expect("subset of the vertex range");
            if !self.is_covered(&h.graph, a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Covered test with the reference (simplex) oracle.
pub fn oracle_is_covered(g: &Graph, a: usize, b: usize) -> Result<bool, OracleError> {
    Oracle::default().is_covered(g, a, b)
}

pub fn oracle_is_critical_covered(g: &Graph, a: usize, b: usize, k: usize) -> Result<bool, OracleError> {
    Oracle::default().is_critical_covered(g, a, b, k)
}

/// `true` when every weight is a multiple of 1/2.
pub fn is_half_integral(h: &FractionalAssignment<Rational>) -> bool {
    let two = Rational::one() + Rational::one();
    h.iter().all(|(_, w)| (w * &two).denom().is_one())
}
