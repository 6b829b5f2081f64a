//! Connectivity/independence bounds, the sharpness constructions, and
//! stream-scale empirical verification of the connectivity theorem.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::covered::{
    is_fractional_abk_critical_covered, lemma_witness, CoveredError, CriticalVerdict, FactorParams, LemmaWitness,
};
use crate::graph::{complete, disjoint_clique_union, join, Graph, GraphError, VertexSet};
use crate::graph6::{write_graph6, NumberedGraph, StreamError};
use crate::invariants::{independence_number, vertex_connectivity, InvariantError};
use crate::scalar::ratio;
use crate::Rational;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parameter domain violated: {0}")]
    Domain(String),
    #[error("construction parameters rejected: {}", join_violations(.0))]
    Remark2(Vec<Remark2Violation>),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Covered(#[from] CoveredError),
}

fn join_violations(v: &[Remark2Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A failed precondition of the second sharpness construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Remark2Violation {
    ANotPositive,
    AEven { a: usize },
    BBelowA { a: usize, b: usize },
    MBelowTwo { m: usize },
    NotDivisible { numerator: usize, divisor: usize },
    PBelowTwo { p: usize },
}

impl fmt::Display for Remark2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Remark2Violation::ANotPositive => write!(f, "a must be at least 1"),
            Remark2Violation::AEven { a } => write!(f, "a = {a} must be odd"),
            Remark2Violation::BBelowA { a, b } => write!(f, "b = {b} must be at least a = {a}"),
            Remark2Violation::MBelowTwo { m } => write!(f, "m = {m} must be at least 2"),
            Remark2Violation::NotDivisible { numerator, divisor } => {
                write!(f, "(a+1)^2 m + 4 = {numerator} is not divisible by 4b = {divisor}")
            }
            Remark2Violation::PBelowTwo { p } => write!(f, "p = {p} must be at least 2"),
        }
    }
}

fn rational_string<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn theorem3_domain(a: usize, b: usize) -> Result<(), HarnessError> {
    if a < 1 || b < a {
        return Err(HarnessError::Domain(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// The two branches of the connectivity bound, in order.
pub fn theorem3_terms(a: usize, b: usize, k: usize, alpha: usize) -> Result<(Rational, Rational), HarnessError> {
    theorem3_domain(a, b)?;
    if alpha < 1 {
        return Err(HarnessError::Domain("alpha must be at least 1".into()));
    }
    let (a, b, k, alpha) = (a as i64, b as i64, k as i64, alpha as i64);
    let denom = 4 * b;
    let first = ratio(2 * b * (a + 1) * (b + 1) + 4 * b * k + 5, denom);
    let second = ratio((a + 1) * (a + 1) * alpha + 4 * b * k + 5, denom);
    Ok((first, second))
}

/// `max{(2b(a+1)(b+1)+4bk+5)/(4b), ((a+1)^2 α + 4bk + 5)/(4b)}`.
pub fn theorem3_bound(a: usize, b: usize, k: usize, alpha: usize) -> Result<Rational, HarnessError> {
    let (first, second) = theorem3_terms(a, b, k, alpha)?;
    Ok(first.max(second))
}

/// The `k = 0` specialization, written out on its own.
pub fn corollary1_bound(a: usize, b: usize, alpha: usize) -> Result<Rational, HarnessError> {
    theorem3_domain(a, b)?;
    if alpha < 1 {
        return Err(HarnessError::Domain("alpha must be at least 1".into()));
    }
    let (a, b, alpha) = (a as i64, b as i64, alpha as i64);
    let first = ratio(2 * b * (a + 1) * (b + 1) + 5, 4 * b);
    let second = ratio((a + 1) * (a + 1) * alpha + 5, 4 * b);
    Ok(first.max(second))
}

/// `max{(r+1)^2 / 2, (r+1)^2 α / (4r)}`, the fractional r-factor bound.
pub fn theorem1_bound(r: usize, alpha: usize) -> Result<Rational, HarnessError> {
    if r < 1 || alpha < 1 {
        return Err(HarnessError::Domain(format!(
            "need r >= 1 and alpha >= 1, got r = {r}, alpha = {alpha}"
        )));
    }
    let (r, alpha) = (r as i64, alpha as i64);
    let sq = (r + 1) * (r + 1);
    Ok(ratio(sq, 2).max(ratio(sq * alpha, 4 * r)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub params: FactorParams,
    pub kappa: usize,
    pub alpha: usize,
    #[serde(serialize_with = "rational_string")]
    pub bound: Rational,
    pub hypothesis_met: bool,
}

/// Computes `κ`, `α` and compares `κ` against the bound exactly.
pub fn check_theorem3_hypothesis(g: &Graph, params: FactorParams) -> Result<BoundReport, HarnessError> {
    let kappa = vertex_connectivity(g)?;
    let alpha = independence_number(g);
    let bound = theorem3_bound(params.a, params.b, params.k, alpha)?;
    let hypothesis_met = Rational::from_integer(kappa.into()) >= bound;
    Ok(BoundReport {
        params,
        kappa,
        alpha,
        bound,
        hypothesis_met,
    })
}

/// The degree condition: `n >= ((a+b)(a+b-1)+bk+3)/b`, `δ >= a+k+1`, and
/// `max{d(x), d(y)} >= (an+bk+2)/(a+b)` for all non-adjacent `x != y`.
pub fn check_theorem2_condition(g: &Graph, params: FactorParams) -> Result<bool, HarnessError> {
    let FactorParams { a, b, k } = params;
    if a < 1 || b < a.max(2) {
        return Err(HarnessError::Domain(format!(
            "need a >= 1 and b >= max(2, a), got a = {a}, b = {b}"
        )));
    }
    let n = g.order();
    if n == 0 {
        return Ok(false);
    }
    // both sides are cleared of their positive denominators
    if b * n < (a + b) * (a + b - 1) + b * k + 3 {
        return Ok(false);
    }
    if g.min_degree().unwrap_or(0) < a + k + 1 {
        return Ok(false);
    }
    let threshold = a * n + b * k + 2;
    for x in 0..n {
        for y in x + 1..n {
            if !g.has_edge(x, y) && (a + b) * g.degree(x).max(g.degree(y)) < threshold {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which bound branch a construction sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// `4bκ = 2b(a+1)(b+1) + 4bk + 4`
    Connectivity,
    /// `4bκ = (a+1)^2 α + 4bk + 4`
    Independence,
}

/// A graph sitting one quarter below the bound, with its failure witness.
#[derive(Debug, Clone, Serialize)]
pub struct SharpnessCertificate {
    pub remark: u8,
    #[serde(serialize_with = "graph6_string")]
    pub graph: Graph,
    pub params: FactorParams,
    /// Order of the complete part of the join (`p + k` or `3 + k`).
    pub clique_size: usize,
    pub expected_kappa: usize,
    pub expected_alpha: usize,
    pub boundary: Boundary,
    /// Deleted set `U` (first `k` clique vertices).
    #[serde(rename = "U")]
    pub deleted: VertexSet,
    /// Witness for `G - U`, in `G`'s labeling.
    pub witness: LemmaWitness,
}

fn graph6_string<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    match write_graph6(g) {
        Ok(line) => s.serialize_str(&line),
        Err(e) => Err(serde::ser::Error::custom(e)),
    }
}

/// Outcome of replaying a [`SharpnessCertificate`].
#[derive(Debug, Clone, Serialize)]
pub struct CertificateCheck {
    pub kappa: usize,
    pub alpha: usize,
    pub kappa_matches: bool,
    pub alpha_matches: bool,
    pub boundary_holds: bool,
    pub witness_reproduced: bool,
    pub checker: CriticalVerdict,
}

impl CertificateCheck {
    pub fn all_ok(&self) -> bool {
        let checker_ok = self.checker.witness.as_ref().is_some_and(|w| {
            w.inner
                .witness
                .as_ref()
                .is_some_and(|lw| lw.theta == 1 && lw.epsilon == 2)
        });
        self.kappa_matches
            && self.alpha_matches
            && self.boundary_holds
            && self.witness_reproduced
            && !self.checker.critical_covered
            && checker_ok
    }
}

impl SharpnessCertificate {
    /// Recomputes `κ`, `α`, the boundary identity, the stated witness and the
    /// critical-covered verdict from scratch.
    pub fn verify(&self) -> Result<CertificateCheck, HarnessError> {
        let kappa = vertex_connectivity(&self.graph)?;
        let alpha = independence_number(&self.graph);
        let FactorParams { a, b, k } = self.params;
        let lhs = 4 * b * kappa;
        let boundary_holds = match self.boundary {
            Boundary::Connectivity => lhs == 2 * b * (a + 1) * (b + 1) + 4 * b * k + 4,
            Boundary::Independence => lhs == (a + 1) * (a + 1) * alpha + 4 * b * k + 4,
        };

        let sub = self.graph.delete_vertices(self.deleted)?;
        let local_x: VertexSet = sub
            .original_ids
            .iter()
            .enumerate()
            .filter(|(_, old)| self.witness.x.contains(**old))
            .map(|(new, _)| new)
            .collect();
        let witness_reproduced = self.deleted.len() == k
            && lemma_witness(&sub.graph, local_x, self.params).is_some_and(|w| {
                sub.lift(w.x) == self.witness.x
                    && sub.lift(w.y) == self.witness.y
                    && w.theta == self.witness.theta
                    && w.epsilon == self.witness.epsilon
            });

        let checker = is_fractional_abk_critical_covered(&self.graph, self.params)?;
        Ok(CertificateCheck {
            kappa,
            alpha,
            kappa_matches: kappa == self.expected_kappa,
            alpha_matches: alpha == self.expected_alpha,
            boundary_holds,
            witness_reproduced,
            checker,
        })
    }
}

/// `K_{c} ∨ m K_t` together with the witness `U` = first `k` clique ids,
/// `X` = the rest of the clique, `Y` = the clique-union part.
fn clique_join_certificate(
    remark: u8,
    params: FactorParams,
    clique_size: usize,
    copies: usize,
    part_size: usize,
    boundary: Boundary,
) -> Result<SharpnessCertificate, HarnessError> {
    let graph = join(&complete(clique_size)?, &disjoint_clique_union(copies, part_size)?)?;
    let k = params.k;
    let deleted = VertexSet::range(k);
    let x = VertexSet::interval(k, clique_size);
    let y = VertexSet::interval(clique_size, graph.order());
    let (a, b) = (params.a as i64, params.b as i64);
    let theta = b * x.len() as i64 + (copies * part_size * (part_size - 1)) as i64 - a * y.len() as i64;
    Ok(SharpnessCertificate {
        remark,
        graph,
        params,
        clique_size,
        expected_kappa: clique_size,
        expected_alpha: copies,
        boundary,
        deleted,
        witness: LemmaWitness {
            x,
            y,
            theta,
            epsilon: 2,
        },
    })
}

/// `K_{3+k} ∨ 2K_1` with `a = b = 1`.
pub fn build_remark1(k: usize) -> Result<SharpnessCertificate, HarnessError> {
    let params = FactorParams::new(1, 1, k)?;
    clique_join_certificate(1, params, 3 + k, 2, 1, Boundary::Connectivity)
}

/// Checks the preconditions of [`build_remark2`]; returns `p` on success.
pub fn remark2_p(a: usize, b: usize, m: usize) -> Result<usize, Vec<Remark2Violation>> {
    let mut violations = Vec::new();
    if a < 1 {
        violations.push(Remark2Violation::ANotPositive);
    } else if a.is_multiple_of(2) {
        violations.push(Remark2Violation::AEven { a });
    }
    if b < a {
        violations.push(Remark2Violation::BBelowA { a, b });
    }
    if m < 2 {
        violations.push(Remark2Violation::MBelowTwo { m });
    }
    let numerator = (a + 1) * (a + 1) * m + 4;
    let divisor = 4 * b;
    let p = if divisor == 0 || !numerator.is_multiple_of(divisor) {
        violations.push(Remark2Violation::NotDivisible { numerator, divisor });
        None
    } else {
        Some(numerator / divisor)
    };
    if let Some(p) = p.filter(|&p| p < 2) {
        violations.push(Remark2Violation::PBelowTwo { p });
    }
    match (violations.is_empty(), p) {
        (true, Some(p)) => Ok(p),
        _ => Err(violations),
    }
}

/// `K_{p+k} ∨ m K_{(a+1)/2}` with `p = ((a+1)^2 m + 4) / (4b)`.
pub fn build_remark2(a: usize, b: usize, m: usize, k: usize) -> Result<SharpnessCertificate, HarnessError> {
    let p = remark2_p(a, b, m).map_err(HarnessError::Remark2)?;
    let params = FactorParams::new(a, b, k)?;
    clique_join_certificate(2, params, p + k, m, a.div_ceil(2), Boundary::Independence)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConclusionFailure {
    pub line: usize,
    pub graph6: String,
    pub report: BoundReport,
    pub verdict: CriticalVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub params: FactorParams,
    pub graphs_scanned: usize,
    pub hypothesis_holders: usize,
    pub conclusion_failures: Vec<ConclusionFailure>,
    /// Wall time; left out of JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

enum Outcome {
    NotHolder,
    Holds,
    Fails(Box<ConclusionFailure>),
}

fn verify_one(item: &NumberedGraph, params: FactorParams) -> Result<Outcome, HarnessError> {
    let g = &item.graph;
    let Some(delta) = g.min_degree() else {
        return Ok(Outcome::NotHolder);
    };
    // κ <= δ, and the first branch does not depend on α.
    let (first, _) = theorem3_terms(params.a, params.b, params.k, 1)?;
    if Rational::from_integer(delta.into()) < first {
        return Ok(Outcome::NotHolder);
    }
    let report = check_theorem3_hypothesis(g, params)?;
    if !report.hypothesis_met {
        return Ok(Outcome::NotHolder);
    }
    let verdict = is_fractional_abk_critical_covered(g, params)?;
    if verdict.critical_covered {
        return Ok(Outcome::Holds);
    }
    Ok(Outcome::Fails(Box::new(ConclusionFailure {
        line: item.line,
        graph6: write_graph6(g).unwrap_or_default(),
        report,
        verdict,
    })))
}

const STREAM_BATCH: usize = 4096;

/// Runs the hypothesis filter and, for holders, the critical-covered check on
/// every graph of the stream. Parse errors abort with their line number.
///
/// With [`Parallelism::Rayon`](crate::covered::Parallelism::Rayon) batches are
/// evaluated on the current rayon pool; results are merged in input order.
pub fn verify_theorem3_on_stream<I>(
    graphs: I,
    params: FactorParams,
    par: crate::covered::Parallelism,
) -> Result<VerificationReport, HarnessError>
where
    I: IntoIterator<Item = Result<NumberedGraph, StreamError>>,
{
    theorem3_domain(params.a, params.b)?;
    let start = Instant::now();
    let mut report = VerificationReport {
        params,
        graphs_scanned: 0,
        hypothesis_holders: 0,
        conclusion_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let mut iter = graphs.into_iter();
    loop {
        let batch: Vec<NumberedGraph> = iter.by_ref().take(STREAM_BATCH).collect::<Result<_, _>>()?;
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = match par {
            crate::covered::Parallelism::Serial => {
                batch.iter().map(|g| verify_one(g, params)).collect::<Result<_, _>>()?
            }
            crate::covered::Parallelism::Rayon => batch
                .par_iter()
                .map(|g| verify_one(g, params))
                .collect::<Result<_, _>>()?,
        };
        report.graphs_scanned += batch.len();
        for outcome in outcomes {
            match outcome {
                Outcome::NotHolder => {}
                Outcome::Holds => report.hypothesis_holders += 1,
                Outcome::Fails(f) => {
                    report.hypothesis_holders += 1;
                    report.conclusion_failures.push(*f);
                }
            }
        }
    }
    report.conclusion_failures.sort_by_key(|f| f.line);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Lossy decimal view of a bound, for text output.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covered::Parallelism;
    use crate::graph::{cycle, enumerate_graphs};

    #[test]
    fn bound_examples() {
        assert_eq!(theorem3_bound(1, 1, 0, 2).unwrap(), ratio(13, 4));
        assert_eq!(theorem3_bound(1, 1, 1, 2).unwrap(), ratio(17, 4));
        let (first, second) = theorem3_terms(2, 3, 0, 5).unwrap();
        assert_eq!((first.clone(), second), (ratio(77, 12), ratio(50, 12)));
        assert_eq!(theorem3_bound(2, 3, 0, 5).unwrap(), first);
        assert!(theorem3_bound(0, 1, 0, 1).is_err());
        assert!(theorem3_bound(2, 1, 0, 1).is_err());
        assert!(theorem3_bound(1, 1, 0, 0).is_err());
    }

    #[test]
    fn r_factor_bound_values() {
        assert_eq!(theorem1_bound(1, 1).unwrap(), ratio(2, 1));
        assert_eq!(theorem1_bound(1, 2).unwrap(), ratio(2, 1));
        assert_eq!(theorem1_bound(2, 4).unwrap(), ratio(9, 2));
        assert!(theorem1_bound(0, 1).is_err());
    }

    #[test]
    fn hypothesis_examples() {
        let p = FactorParams::new(1, 1, 0).unwrap();
        let r = check_theorem3_hypothesis(&complete(6).unwrap(), p).unwrap();
        assert_eq!(
            (r.kappa, r.alpha, r.bound.clone(), r.hypothesis_met),
            (5, 1, ratio(13, 4), true)
        );
        assert!(!check_theorem3_hypothesis(&cycle(5).unwrap(), p).unwrap().hypothesis_met);
        let r1 = build_remark1(0).unwrap();
        let r = check_theorem3_hypothesis(&r1.graph, p).unwrap();
        assert_eq!(r.kappa, 3);
        assert!(!r.hypothesis_met);
    }

    #[test]
    fn degree_condition_examples() {
        let p = FactorParams::new(1, 2, 0).unwrap();
        assert!(!check_theorem2_condition(&cycle(5).unwrap(), p).unwrap());
        let k7_minus = complete(7).unwrap();
        let edges: Vec<(usize, usize)> = k7_minus
            .edges()
            .filter(|e| (e.u, e.v) != (0, 1))
            .map(|e| (e.u, e.v))
            .collect();
        let k7_minus = Graph::from_edges(7, edges).unwrap();
        assert!(check_theorem2_condition(&k7_minus, p).unwrap());
        // complete graphs: only the order and degree preconditions matter
        assert!(check_theorem2_condition(&complete(5).unwrap(), p).unwrap());
        assert!(!check_theorem2_condition(&complete(4).unwrap(), p).unwrap());
        assert!(check_theorem2_condition(&complete(5).unwrap(), FactorParams::new(1, 1, 0).unwrap()).is_err());
    }

    #[test]
    fn two_isolated_certificates() {
        for k in 0..=2 {
            let cert = build_remark1(k).unwrap();
            assert_eq!(cert.graph.order(), 5 + k);
            assert_eq!(cert.expected_kappa, 3 + k);
            assert_eq!((cert.witness.theta, cert.witness.epsilon), (1, 2));
            let check = cert.verify().unwrap();
            assert!(check.all_ok(), "{check:?}");
        }
    }

    #[test]
    fn small_clique_certificates() {
        for (a, b, m, k, p) in [(1, 1, 4, 0, 5), (1, 2, 3, 0, 2), (1, 1, 4, 1, 5)] {
            let cert = build_remark2(a, b, m, k).unwrap();
            assert_eq!(cert.clique_size, p + k);
            assert_eq!(cert.expected_alpha, m);
            assert_eq!(cert.witness.theta, 1);
            assert!(cert.verify().unwrap().all_ok());
        }
    }

    #[test]
    fn small_clique_rejections() {
        let v = remark2_p(3, 2, 1).unwrap_err();
        assert!(v.contains(&Remark2Violation::BBelowA { a: 3, b: 2 }));
        assert!(v.contains(&Remark2Violation::MBelowTwo { m: 1 }));
        assert!(v.contains(&Remark2Violation::NotDivisible {
            numerator: 20,
            divisor: 8
        }));
        assert_eq!(remark2_p(2, 2, 4).unwrap_err(), vec![Remark2Violation::AEven { a: 2 }]);
        // (1,3,2): 4*2+4 = 12 = 4b, so p = 1
        assert_eq!(
            remark2_p(1, 3, 2).unwrap_err(),
            vec![Remark2Violation::PBelowTwo { p: 1 }]
        );
        let msg = build_remark2(3, 2, 1, 0).unwrap_err().to_string();
        assert!(msg.contains("divisible") && msg.contains("m = 1"));
    }

    fn stream_of(graphs: impl IntoIterator<Item = Graph>) -> Vec<Result<NumberedGraph, StreamError>> {
        graphs
            .into_iter()
            .enumerate()
            .map(|(i, graph)| Ok(NumberedGraph { line: i + 1, graph }))
            .collect()
    }

    #[test]
    fn stream_edge_cases() {
        let p = FactorParams::new(1, 1, 0).unwrap();
        let empty = verify_theorem3_on_stream(Vec::new(), p, Parallelism::Serial).unwrap();
        assert_eq!((empty.graphs_scanned, empty.hypothesis_holders), (0, 0));
        let cycles = stream_of((3..8).map(|n| cycle(n).unwrap()));
        let r = verify_theorem3_on_stream(cycles, p, Parallelism::Serial).unwrap();
        assert_eq!((r.graphs_scanned, r.hypothesis_holders), (5, 0));
        assert!(r.conclusion_failures.is_empty());
    }

    #[test]
    fn stream_small_orders() {
        let p = FactorParams::new(1, 1, 0).unwrap();
        let graphs = (1..=6).flat_map(|n| enumerate_graphs(n).unwrap());
        let r = verify_theorem3_on_stream(stream_of(graphs), p, Parallelism::Serial).unwrap();
        assert!(r.hypothesis_holders > 0);
        assert!(r.conclusion_failures.is_empty());
    }

    #[test]
    fn stream_parse_error_propagates() {
        let input = "A_\nbad line\n";
        let err = verify_theorem3_on_stream(
            crate::graph6::read_graph6_stream(input.as_bytes()),
            FactorParams::new(1, 1, 0).unwrap(),
            Parallelism::Serial,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("line 2"));
    }
}
