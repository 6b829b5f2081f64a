//! Integer max-flow (Dinic) and feasible circulations with lower bounds.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: i64,
}

/// Residual network. Arc `2i` is the forward arc of the `i`-th added arc,
/// `2i + 1` its reverse.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    original: Vec<i64>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            original: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    /// Adds `from -> to` with capacity `cap`; returns the arc handle.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        debug_assert!(cap >= 0);
        let id = self.original.len();
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
        self.original.push(cap);
        id
    }

    /// Flow currently routed through the arc `id`.
    pub fn flow_on(&self, id: usize) -> i64 {
        self.original[id] - self.arcs[2 * id].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.out[u].len() {
            let a = self.out[u][self.cursor[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Maximum `s`-`t` flow, stopping early once `limit` units are routed.
    pub fn max_flow_up_to(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, limit - total);
                if f == 0 {
                    break;
                }
                total += f;
                if total == limit {
                    break;
                }
            }
        }
        total
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.max_flow_up_to(s, t, i64::MAX)
    }
}

/// Circulation problem with `lower <= flow <= upper` on every arc.
#[derive(Debug, Clone)]
pub struct BoundedCirculation {
    nodes: usize,
    arcs: Vec<(usize, usize, i64, i64)>,
}

impl BoundedCirculation {
    pub fn new(nodes: usize) -> Self {
        BoundedCirculation {
            nodes,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64) -> usize {
        self.arcs.push((from, to, lower, upper));
        self.arcs.len() - 1
    }

    /// A feasible integral circulation (flow per arc handle), if one exists.
    pub fn solve(&self) -> Option<Vec<i64>> {
        if self.arcs.iter().any(|&(_, _, lo, hi)| lo > hi) {
            return None;
        }
        let source = self.nodes;
        let sink = self.nodes + 1;
        let mut net = FlowNetwork::new(self.nodes + 2);
        let mut excess = vec![0i64; self.nodes];
        let handles: Vec<usize> = self
            .arcs
            .iter()
            .map(|&(u, v, lo, hi)| {
                excess[v] += lo;
                excess[u] -= lo;
                net.add_arc(u, v, hi - lo)
            })
            .collect();
        let mut demand = 0;
        for (v, &e) in excess.iter().enumerate() {
            if e > 0 {
                net.add_arc(source, v, e);
                demand += e;
            } else if e < 0 {
                net.add_arc(v, sink, -e);
            }
        }
        if net.max_flow(source, sink) < demand {
            return None;
        }
        Some(
            handles
                .iter()
                .zip(&self.arcs)
                .map(|(&h, &(_, _, lo, _))| lo + net.flow_on(h))
                .collect(),
        )
    }
}
