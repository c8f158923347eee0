//! Max-flow (Dinic) on an undirected graph with real capacities.

use std::collections::VecDeque;

use crate::instance::{Graph, NodeId};

struct Arc {
    to: usize,
    cap: f64,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { arcs: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    /// Undirected edge: two arcs that are each other's residual.
    fn add_undirected(&mut self, u: usize, v: usize, cap: f64) {
        self.out[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.out[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap });
    }

    fn add_directed(&mut self, u: usize, v: usize, cap: f64) {
        self.out[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.out[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: 0.0 });
    }

    fn levels(&self, s: usize, t: usize, eps: f64) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > eps && level[arc.to] == usize::MAX {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, limit: f64, level: &[usize], iter: &mut [usize], eps: f64) -> f64 {
        if u == t {
            return limit;
        }
        while iter[u] < self.out[u].len() {
            let a = self.out[u][iter[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > eps && level[to] == level[u] + 1 {
                let pushed = self.push(to, t, limit.min(cap), level, iter, eps);
                if pushed > eps {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0.0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let eps = 1e-12;
        let mut total = 0.0;
        while let Some(level) = self.levels(s, t, eps) {
            let mut iter = vec![0; self.out.len()];
            loop {
                let f = self.push(s, t, f64::INFINITY, &level, &mut iter, eps);
                if f <= eps {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Max-flow from `source` to the node set `sinks` when edge `e` of the
/// undirected graph has capacity `capacity[e]`. Sinks are joined to an
/// auxiliary node by unbounded arcs.
pub fn max_flow_to_set(graph: &Graph, capacity: &[f64], source: NodeId, sinks: &[NodeId]) -> f64 {
    if sinks.contains(&source) {
        return f64::INFINITY;
    }
    let n = graph.node_count();
    let mut net = Network::new(n + 1);
    for (e, edge) in graph.edges().iter().enumerate() {
        if capacity[e] > 0.0 {
            net.add_undirected(edge.u, edge.v, capacity[e]);
        }
    }
    for &s in sinks {
        net.add_directed(s, n, f64::INFINITY);
    }
    net.max_flow(source, n)
}
