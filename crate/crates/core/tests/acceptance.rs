//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any
//! failure. Built with `harness = false` so the lines always show.

mod common;

use std::io::Cursor;
use std::time::{Duration, Instant};

use factorlab::covered::{
    epsilon, is_fractional_ab_covered, is_fractional_abk_critical_covered, CriticalVerdict, FactorParams,
};
use factorlab::graph::enumerate_graphs;
use factorlab::graph6::{parse_graph6, read_graph6_stream, write_graph6};
use factorlab::harness::{
    build_remark1, build_remark2, corollary1_bound, remark2_p, theorem1_bound, theorem3_bound, theorem3_terms,
    verify_theorem3_on_stream,
};
use factorlab::invariants::{independence_number, min_degree, vertex_connectivity};
use factorlab::lp::{Oracle, OracleMethod};
use factorlab::scalar::ratio;
use factorlab::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TWO_ISOLATED_BUDGET: Duration = Duration::from_secs(1);
const SMALL_CLIQUES_BUDGET: Duration = Duration::from_secs(5);
const SWEEP_BUDGET: Duration = Duration::from_secs(30 * 60);
const STREAM_BUDGET: Duration = Duration::from_secs(30 * 60);
const BOUNDS_BUDGET: Duration = Duration::from_secs(1);
/// Every comparison below is exact; no floating-point tolerance is used.
const COVERED_PAIRS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 2), (2, 3)];
/// Non-isomorphic graphs of order 0..=8.
const GRAPH_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];
const RANDOM_GRAPHS: usize = 10_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:?}, budget {budget:?}"))
}

/// The checker must reject with a witness of slack exactly one.
fn tight_rejection(verdict: &CriticalVerdict) -> Result<(), String> {
    ensure(!verdict.critical_covered, || "checker accepted".into())?;
    let w = verdict
        .witness
        .as_ref()
        .and_then(|c| c.inner.witness.as_ref())
        .ok_or("rejection without witness")?;
    ensure(w.theta == 1 && w.epsilon == 2, || {
        format!("witness theta = {}, epsilon = {}", w.theta, w.epsilon)
    })
}

fn clique_join_two_isolated() -> Outcome {
    let start = Instant::now();
    let (a, b) = (1i64, 1i64);
    for k in 0..=2usize {
        let cert = build_remark1(k).map_err(|e| e.to_string())?;
        let g = &cert.graph;
        let kappa = vertex_connectivity(g).map_err(|e| e.to_string())? as i64;
        ensure(kappa == 3 + k as i64, || format!("k = {k}: kappa = {kappa}"))?;
        let lhs = 4 * b * kappa;
        let rhs = 2 * b * (a + 1) * (b + 1) + 4 * b * k as i64 + 4;
        ensure(lhs == rhs, || format!("k = {k}: 4b kappa = {lhs}, expected {rhs}"))?;
        let verdict =
            is_fractional_abk_critical_covered(g, FactorParams::new(1, 1, k).unwrap()).map_err(|e| e.to_string())?;
        tight_rejection(&verdict).map_err(|e| format!("k = {k}: {e}"))?;
        let replay = cert.verify().map_err(|e| e.to_string())?;
        ensure(replay.all_ok(), || {
            format!("k = {k}: certificate replay failed: {replay:?}")
        })?;
    }
    within(TWO_ISOLATED_BUDGET, start)?;
    Ok(format!("k = 0,1,2 in {:?}", start.elapsed()))
}

fn clique_join_small_cliques() -> Outcome {
    let start = Instant::now();
    for (a, b, m, k) in [(1usize, 1usize, 4usize, 0usize), (1, 1, 4, 1), (1, 2, 3, 0)] {
        let tag = format!("(a,b,m,k) = ({a},{b},{m},{k})");
        let p = remark2_p(a, b, m).map_err(|v| format!("{tag}: {v:?}"))?;
        let cert = build_remark2(a, b, m, k).map_err(|e| format!("{tag}: {e}"))?;
        let g = &cert.graph;
        let alpha = independence_number(g);
        let kappa = vertex_connectivity(g).map_err(|e| e.to_string())?;
        ensure(alpha == m, || format!("{tag}: alpha = {alpha}"))?;
        ensure(kappa == p + k, || format!("{tag}: kappa = {kappa}, p = {p}"))?;
        let (ai, bi, ki) = (a as i64, b as i64, k as i64);
        let lhs = 4 * bi * kappa as i64;
        let rhs = (ai + 1) * (ai + 1) * alpha as i64 + 4 * bi * ki + 4;
        ensure(lhs == rhs, || format!("{tag}: 4b kappa = {lhs}, expected {rhs}"))?;
        let verdict =
            is_fractional_abk_critical_covered(g, FactorParams::new(a, b, k).unwrap()).map_err(|e| e.to_string())?;
        tight_rejection(&verdict).map_err(|e| format!("{tag}: {e}"))?;
        ensure(cert.verify().map_err(|e| e.to_string())?.all_ok(), || {
            format!("{tag}: certificate replay failed")
        })?;
    }
    within(SMALL_CLIQUES_BUDGET, start)?;
    Ok(format!("3 tuples in {:?}", start.elapsed()))
}

fn disagreements(g: &Graph, oracle: &Oracle) -> Vec<String> {
    let mut out = Vec::new();
    for (a, b) in COVERED_PAIRS {
        let subset = is_fractional_ab_covered(g, FactorParams::covered(a, b).unwrap()).covered;
        let lp = oracle.is_covered(g, a, b).expect("valid oracle input");
        if subset != lp {
            out.push(format!(
                "{} at (a,b) = ({a},{b}): subset check {subset}, oracle {lp}",
                write_graph6(g).unwrap()
            ));
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::new(OracleMethod::DoubleCoverFlow);
    let mut checked = 0u64;
    for n in 0..=7 {
        let graphs = enumerate_graphs(n).map_err(|e| e.to_string())?;
        let total = graphs.total();
        let bad: Vec<String> = (0..total)
            .into_par_iter()
            .flat_map_iter(|i| disagreements(&graphs.graph_at(i), &oracle))
            .collect();
        ensure(bad.is_empty(), || {
            format!("n = {n}: {} disagreements, first {}", bad.len(), bad[0])
        })?;
        checked += total;
    }
    within(SWEEP_BUDGET, start)?;
    Ok(format!(
        "{checked} labeled graphs (full sweep through n = 7) x {} pairs, 0 disagreements, {:?}",
        COVERED_PAIRS.len(),
        start.elapsed()
    ))
}

fn stream_verification() -> Outcome {
    let start = Instant::now();
    let levels = common::nonisomorphic_graphs(8);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    ensure(counts == GRAPH_COUNTS, || {
        format!("class counts {counts:?}, expected {GRAPH_COUNTS:?}")
    })?;
    let mut text = String::new();
    for g in levels.iter().flatten() {
        text.push_str(&write_graph6(g).map_err(|e| e.to_string())?);
        text.push('\n');
    }
    let mut summary = Vec::new();
    for (a, b, k) in [(1, 1, 0), (1, 1, 1), (1, 2, 0)] {
        let params = FactorParams::new(a, b, k).unwrap();
        let stream = read_graph6_stream(Cursor::new(text.as_bytes()));
        let report = verify_theorem3_on_stream(stream, params, Default::default()).map_err(|e| e.to_string())?;
        ensure(report.graphs_scanned == GRAPH_COUNTS.iter().sum::<usize>(), || {
            format!("scanned {} graphs", report.graphs_scanned)
        })?;
        ensure(report.conclusion_failures.is_empty(), || {
            let f = &report.conclusion_failures[0];
            format!(
                "({a},{b},{k}): {} failures, first line {} {}",
                report.conclusion_failures.len(),
                f.line,
                f.graph6
            )
        })?;
        summary.push(format!("({a},{b},{k}): {} holders", report.hypothesis_holders));
    }
    within(STREAM_BUDGET, start)?;
    Ok(format!(
        "{} classes of order <= 8; {}; {:?}",
        counts.iter().sum::<usize>(),
        summary.join(", "),
        start.elapsed()
    ))
}

fn invariant_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.0..1.0);
        let g = common::random_graph(&mut rng, n, p);
        let kappa = vertex_connectivity(&g).unwrap();
        let delta = min_degree(&g).unwrap();
        ensure(kappa <= delta, || {
            format!("random graph {i}: kappa {kappa} > delta {delta}")
        })?;
    }
    for n in 1..=6 {
        let graphs = enumerate_graphs(n).unwrap();
        for (i, g) in graphs.enumerate() {
            let tag = || format!("n = {n}, index {i}");
            let kappa = vertex_connectivity(&g).unwrap();
            ensure(kappa == common::brute_kappa(&g), || format!("{}: kappa {kappa}", tag()))?;
            let alpha = independence_number(&g);
            ensure(alpha == common::brute_alpha(&g), || format!("{}: alpha {alpha}", tag()))?;
            for a in 1..=3 {
                ensure(epsilon(&g, VertexSet::default(), a) == 0, || {
                    format!("{}: epsilon(empty) != 0", tag())
                })?;
                for x in 0..1u64 << n {
                    let e = epsilon(&g, VertexSet::from_bits(x), a);
                    ensure(e <= 2, || format!("{}: epsilon {e} at X = {x:#b}", tag()))?;
                }
            }
            for a in 1..=3 {
                let mut prev = false;
                for b in a..=a + 3 {
                    let now = is_fractional_ab_covered(&g, FactorParams::covered(a, b).unwrap()).covered;
                    ensure(!prev || now, || {
                        format!("{}: covered at b = {} but not at b = {b}", tag(), b - 1)
                    })?;
                    prev = now;
                }
            }
            let line = write_graph6(&g).unwrap();
            ensure(parse_graph6(&line).as_ref() == Ok(&g), || {
                format!("{}: graph6 round trip of {line}", tag())
            })?;
        }
    }
    Ok(format!(
        "{RANDOM_GRAPHS} random graphs, full enumeration n <= 6, {:?}",
        start.elapsed()
    ))
}

fn bound_evaluators() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for a in 1..=6 {
        for b in a..=6 {
            for alpha in 1..=10 {
                let t3 = theorem3_bound(a, b, 0, alpha).unwrap();
                let c1 = corollary1_bound(a, b, alpha).unwrap();
                ensure(t3 == c1, || format!("(a,b,alpha) = ({a},{b},{alpha}): {t3} vs {c1}"))?;
                cells += 1;
            }
        }
    }
    ensure(theorem1_bound(1, 2).unwrap() == ratio(2, 1), || {
        "theorem1_bound(1,2) != 2".into()
    })?;
    // With a = b = r and k = 0 both branches exceed the r-factor bound's by 5/(4r).
    for r in 1..=6 {
        for alpha in 1..=10 {
            let slack = ratio(5, 4 * r as i64);
            let t1 = theorem1_bound(r, alpha).unwrap();
            let t3 = theorem3_bound(r, r, 0, alpha).unwrap();
            ensure(t3 == &t1 + &slack, || {
                format!("(r,alpha) = ({r},{alpha}): {t3} vs {t1} + {slack}")
            })?;
            let (_, second) = theorem3_terms(r, r, 0, alpha).unwrap();
            let t1_second = ratio(((r + 1) * (r + 1) * alpha) as i64, 4 * r as i64);
            ensure(second == t1_second + slack, || {
                format!("(r,alpha) = ({r},{alpha}): second branch")
            })?;
        }
    }
    within(BOUNDS_BUDGET, start)?;
    Ok(format!(
        "{cells} grid points equal; r-factor spot check 2; {:?}",
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 6] = [
        (
            "clique joined with two isolated vertices is tight",
            clique_join_two_isolated,
        ),
        ("clique joined with small cliques is tight", clique_join_small_cliques),
        ("subset criterion agrees with exact LP oracle", oracle_equivalence),
        (
            "connectivity bound holds on graph6 stream of order <= 8",
            stream_verification,
        ),
        ("invariant suite", invariant_suite),
        ("bound evaluators", bound_evaluators),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
