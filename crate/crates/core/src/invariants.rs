//! Exact minimum degree, vertex connectivity and independence number.

use serde::Serialize;
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invariant undefined on the empty graph")]
    EmptyGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub edges: usize,
    pub delta: usize,
    pub kappa: usize,
    pub alpha: usize,
}

pub fn min_degree(g: &Graph) -> Result<usize, InvariantError> {
    g.min_degree().ok_or(InvariantError::EmptyGraph)
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for a
/// non-adjacent pair, capped at `limit`.
fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.order();
    // v_in = 2v, v_out = 2v + 1
    let mut net = FlowNetwork::new(2 * n);
    let big = n as i64;
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
    }
    for e in g.edges() {
        net.add_arc(2 * e.u + 1, 2 * e.v, big);
        net.add_arc(2 * e.v + 1, 2 * e.u, big);
    }
    net.max_flow_up_to(2 * s + 1, 2 * t, limit as i64) as usize
}

/// `κ(G)`: fewest vertices whose removal disconnects `G` or leaves a single
/// vertex. `κ(K_n) = n - 1`, `κ(K_1) = 0`, and disconnected graphs have 0.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, InvariantError> {
    let n = g.order();
    if n == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    let mut best = n - 1;
    for s in 0..n {
        // Every minimum separator avoids one of the first best + 1 vertices,
        // so sources beyond that add nothing.
        if s > best {
            break;
        }
        let others = g
            .vertices()
            .difference(g.neighbors(s))
            .difference(VertexSet::singleton(s));
        for t in others.iter() {
            best = best.min(local_connectivity(g, s, t, best));
            if best == 0 {
                return Ok(0);
            }
        }
    }
    let kappa = best;
    assert!(
        kappa <= g.min_degree().unwrap_or(0),
        "connectivity exceeds minimum degree"
    );
    Ok(kappa)
}

// Partition `cand` greedily into cliques; their count bounds α(G[cand]).
fn clique_cover_bound(rows: &[u64], mut cand: u64) -> usize {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique_pool = rows[v] & cand;
        cand &= !(1 << v);
        while clique_pool != 0 {
            let u = clique_pool.trailing_zeros() as usize;
            cand &= !(1 << u);
            clique_pool &= rows[u];
        }
        cliques += 1;
    }
    cliques
}

fn mis_search(rows: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover_bound(rows, cand) <= *best {
        return;
    }
    let (mut pick, mut pick_deg) = (usize::MAX, 0);
    for v in VertexSet::from_bits(cand).iter() {
        let d = (rows[v] & cand).count_ones();
        if pick == usize::MAX || d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if pick_deg == 0 {
        *best = (*best).max(size + cand.count_ones() as usize);
        return;
    }
    // Take the max-degree vertex, then leave it out.
    mis_search(rows, cand & !rows[pick] & !(1 << pick), size + 1, best);
    mis_search(rows, cand & !(1 << pick), size, best);
}

/// `α(G)` by branch and bound (max-degree branching, clique-cover pruning).
pub fn independence_number(g: &Graph) -> usize {
    let mut best = 0;
    mis_search(g.rows(), g.vertices().bits(), 0, &mut best);
    best
}

pub fn invariant_report(g: &Graph) -> Result<InvariantReport, InvariantError> {
    Ok(InvariantReport {
        n: g.order(),
        edges: g.edge_count(),
        delta: min_degree(g)?,
        kappa: vertex_connectivity(g)?,
        alpha: independence_number(g),
    })
}
