//! Dinic max-flow on integer capacities. Used by the exact orientation and
//! by the densest-subgraph oracle.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Adds `from -> to` and returns its handle `(from, position)`.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, rev: back, cap });
        self.arcs[to].push(Arc { to: from, rev: fwd, cap: 0 });
        (from, fwd)
    }

    /// Flow currently pushed along the arc with the given handle.
    pub fn flow_on(&self, handle: (usize, usize)) -> i64 {
        let arc = &self.arcs[handle.0][handle.1];
        self.arcs[arc.to][arc.rev].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in &self.arcs[v] {
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[v] + 1;
                    queue.push_back(a.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64) -> i64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.arcs[v].len() {
            let i = self.iter[v];
            let (to, cap) = (self.arcs[v][i].to, self.arcs[v][i].cap);
            if cap > 0 && self.level[v] < self.level[to] {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.arcs[v][i].cap -= pushed;
                    let rev = self.arcs[v][i].rev;
                    self.arcs[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Vertices reachable from `s` in the residual network (the source side
    /// of a minimum cut after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for a in &self.arcs[v] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_small_network() {
        // CLRS example, max flow 23.
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (1, 3, 12),
            (2, 1, 4),
            (2, 4, 14),
            (3, 2, 9),
            (3, 5, 20),
            (4, 3, 7),
            (4, 5, 4),
        ] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5), 23);
        let side = net.source_side(0);
        assert!(side[0] && !side[5]);
    }
}
