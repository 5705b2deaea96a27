//! Dinic's maximum flow over real capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    tol: f64,
}

/// Handle to an arc returned by [`FlowNetwork::add_arc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcId {
    from: usize,
    slot: usize,
}

impl FlowNetwork {
    /// Residual capacities at or below `tol` count as saturated.
    pub fn new(nodes: usize, tol: f64) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            tol,
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) -> ArcId {
        let slot = self.adj[from].len();
        let rev = self.adj[to].len() + usize::from(from == to);
        self.adj[from].push(Arc { to, rev, cap });
        self.adj[to].push(Arc {
            to: from,
            rev: slot,
            cap: 0.0,
        });
        ArcId { from, slot }
    }

    /// Flow currently carried by `id` (the residual of its reverse arc).
    pub fn flow(&self, id: ArcId) -> f64 {
        let arc = &self.adj[id.from][id.slot];
        self.adj[arc.to][arc.rev].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> f64 {
        let n = self.adj.len();
        let mut total = 0.0;
        let mut level = vec![usize::MAX; n];
        let mut iter = vec![0usize; n];
        loop {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(v) = queue.pop_front() {
                for a in &self.adj[v] {
                    if a.cap > self.tol && level[a.to] == usize::MAX {
                        level[a.to] = level[v] + 1;
                        queue.push_back(a.to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(source, sink, f64::INFINITY, &level, &mut iter);
                if pushed <= self.tol {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(
        &mut self,
        v: usize,
        sink: usize,
        limit: f64,
        level: &[usize],
        iter: &mut [usize],
    ) -> f64 {
        if v == sink {
            return limit;
        }
        while iter[v] < self.adj[v].len() {
            let Arc { to, rev, cap } = self.adj[v][iter[v]];
            if cap > self.tol && level[v] < level[to] {
                let pushed = self.augment(to, sink, limit.min(cap), level, iter);
                if pushed > self.tol {
                    self.adj[v][iter[v]].cap -= pushed;
                    self.adj[to][rev].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0.0
    }
}
