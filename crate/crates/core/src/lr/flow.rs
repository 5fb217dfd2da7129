//! Dinic max-flow on real capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: f64,
}

#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    /// Adds an arc and returns its id; the reverse residual arc is `id ^ 1`.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0.0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow carried by arc `id` after [`max_flow`](Self::max_flow).
    pub fn flow_on(&self, id: usize) -> f64 {
        self.arcs[id ^ 1].cap
    }

    /// Residual arcs below `eps` count as saturated.
    pub fn max_flow(&mut self, s: usize, t: usize, eps: f64) -> f64 {
        let n = self.adj.len();
        let mut total = 0.0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &id in &self.adj[u] {
                    let a = &self.arcs[id];
                    if a.cap > eps && level[a.to] == usize::MAX {
                        level[a.to] = level[u] + 1;
                        q.push_back(a.to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, f64::INFINITY, &level, &mut next, eps);
                if pushed <= eps {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: f64, level: &[usize], next: &mut [usize], eps: f64) -> f64 {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > eps && level[to] == level[u] + 1 {
                let got = self.augment(to, t, limit.min(cap), level, next, eps);
                if got > 0.0 {
                    self.arcs[id].cap -= got;
                    self.arcs[id ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0.0
    }
}
