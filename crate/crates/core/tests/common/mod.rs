//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use factorlab::graph::full_mask;
use factorlab::{Graph, VertexSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Connectivity by trying every vertex subset in increasing size.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.order();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    for size in 0..n {
        for cut in factorlab::graph::subsets_of_size(n, size) {
            let rest = g.vertices().difference(cut);
            if !connected_on(g, rest) {
                return size;
            }
        }
    }
    unreachable!("a non-complete graph has a separating set")
}

/// Whether `G[set]` is connected; the empty set and singletons count as connected.
pub fn connected_on(g: &Graph, set: VertexSet) -> bool {
    let Some(start) = set.first() else { return true };
    let mut seen = VertexSet::singleton(start);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::default();
        for v in frontier.iter() {
            next = next.union(g.neighbors(v));
        }
        frontier = next.intersection(set).difference(seen);
        seen = seen.union(frontier);
    }
    seen == set
}

pub fn brute_alpha(g: &Graph) -> usize {
    (0..1u64 << g.order())
        .map(VertexSet::from_bits)
        .filter(|&s| g.is_independent(s))
        .map(VertexSet::len)
        .max()
        .unwrap_or(0)
}

/// G(n, p) with a seeded generator.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut rows = vec![0u64; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
    }
    Graph::from_rows(rows)
}

/// Adjacency code of `g` under `perm` (new id of vertex v is `perm[v]`),
/// upper triangle in column order, the same bit order as graph6.
fn code_under(rows: &[u64], perm: &[usize]) -> u64 {
    let n = rows.len();
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut code = 0u64;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if rows[inv[i]] >> inv[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

// Colour refinement by degree, iterated until the partition is stable.
fn refined_colours(rows: &[u64]) -> Vec<usize> {
    let n = rows.len();
    let mut colour: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = VertexSet::from_bits(rows[v]).iter().map(|u| colour[u]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.drain(..).map(|s| distinct.binary_search(&s).unwrap()).collect();
        let classes_before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if distinct.len() == classes_before {
            return next;
        }
        colour = next;
    }
}

fn permute_cells(cells: &[Vec<usize>], at: usize, perm: &mut Vec<usize>, next_id: usize, rows: &[u64], best: &mut u64) {
    if at == cells.len() {
        *best = (*best).min(code_under(rows, perm));
        return;
    }
    let cell = &cells[at];
    let mut order = cell.clone();
    heap_permutations(&mut order, cell.len(), &mut |o| {
        for (i, &v) in o.iter().enumerate() {
            perm[v] = next_id + i;
        }
        permute_cells(cells, at + 1, perm, next_id + o.len(), rows, best);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

/// Canonical code: minimum adjacency code over colour-preserving relabelings
/// that list colour classes in a fixed order. Isomorphism-invariant because
/// refinement is.
pub fn canonical_code(g: &Graph) -> u64 {
    let rows: Vec<u64> = (0..g.order()).map(|v| g.neighbors(v).bits()).collect();
    let colour = refined_colours(&rows);
    let classes = colour.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); classes];
    for (v, &c) in colour.iter().enumerate() {
        cells[c].push(v);
    }
    let mut perm = vec![0; g.order()];
    let mut best = u64::MAX;
    permute_cells(&cells, 0, &mut perm, 0, &rows, &mut best);
    best
}

/// Decodes a canonical code back into a graph on `n` vertices.
fn from_code(n: usize, code: u64) -> Graph {
    let mut rows = vec![0u64; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    Graph::from_rows(rows)
}

/// One representative per isomorphism class for every order `0..=max_n`,
/// by extending each class of order `n - 1` with a new vertex in every way.
pub fn nonisomorphic_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    assert!(max_n <= 10, "canonical codes are packed into u64");
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty(0).unwrap()]];
    for n in 1..=max_n {
        let mut codes: Vec<u64> = Vec::new();
        for base in &levels[n - 1] {
            let old: Vec<u64> = (0..n - 1).map(|v| base.neighbors(v).bits()).collect();
            for nb in 0..1u64 << (n - 1) {
                let mut rows = old.clone();
                for (v, row) in rows.iter_mut().enumerate() {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                rows.push(nb & full_mask(n - 1));
                codes.push(canonical_code(&Graph::from_rows(rows)));
            }
        }
        codes.sort_unstable();
        codes.dedup();
        levels.push(codes.into_iter().map(|c| from_code(n, c)).collect());
    }
    levels
}
