//! Low out-degree orientations and degeneracy orderings.

use serde::Serialize;

use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};

/// An orientation of every edge of a graph.
#[derive(Clone, Debug, Serialize)]
pub struct Orientation {
    /// One `(tail, head)` pair per edge, in the order of [`Graph::edges`].
    pub arcs: Vec<(Vertex, Vertex)>,
    pub out_degree: Vec<usize>,
    pub max_out_degree: usize,
}

impl Orientation {
    fn from_arcs(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Self {
        let mut out_degree = vec![0; n];
        for &(tail, _) in &arcs {
            out_degree[tail] += 1;
        }
        let max_out_degree = out_degree.iter().copied().max().unwrap_or(0);
        Orientation {
            arcs,
            out_degree,
            max_out_degree,
        }
    }

    pub fn out_neighbors(&self, n: usize) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); n];
        for &(tail, head) in &self.arcs {
            out[tail].push(head);
        }
        out
    }

    /// Checks that every edge of `g` is oriented exactly once and that the
    /// recorded degrees are accurate.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let edges: Vec<_> = g.edges().collect();
        edges.len() == self.arcs.len()
            && edges.iter().zip(&self.arcs).all(|(&(u, v), &(t, h))| {
                (t, h) == (u, v) || (t, h) == (v, u)
            })
            && *self == Orientation::from_arcs(g.n(), self.arcs.clone())
    }
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        self.arcs == other.arcs && self.out_degree == other.out_degree && self.max_out_degree == other.max_out_degree
    }
}

/// Repeatedly removes a minimum-degree vertex (smallest id on ties).
/// Returns the removal order and the degeneracy.
pub fn degeneracy_order(g: &Graph) -> (Vec<Vertex>, usize) {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = g.max_degree();
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> = vec![Default::default(); max_deg + 1];
    for v in g.vertices() {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut low = 0;
    for _ in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        degeneracy = degeneracy.max(low);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                buckets[degree[u]].remove(&u);
                degree[u] -= 1;
                buckets[degree[u]].insert(u);
                low = low.min(degree[u]);
            }
        }
    }
    (order, degeneracy)
}

/// Orients every edge from the endpoint removed earlier in a degeneracy
/// ordering; out-degree is at most the degeneracy.
pub fn orient_by_degeneracy(g: &Graph) -> Orientation {
    let (order, _) = degeneracy_order(g);
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let arcs = g
        .edges()
        .map(|(u, v)| if position[u] < position[v] { (u, v) } else { (v, u) })
        .collect();
    Orientation::from_arcs(g.n(), arcs)
}

/// Tries to orient every edge so that no vertex has more than `bound`
/// outgoing arcs: each edge is a unit of flow that must be assigned to one
/// of its endpoints, and each vertex absorbs at most `bound` units.
fn orient_with_bound(g: &Graph, bound: usize) -> Option<Orientation> {
    let edges: Vec<_> = g.edges().collect();
    let m = edges.len();
    let n = g.n();
    let source = m + n;
    let sink = source + 1;
    let mut net = FlowNetwork::new(m + n + 2);
    let mut handles = Vec::with_capacity(m);
    for (e, &(u, v)) in edges.iter().enumerate() {
        net.add_arc(source, e, 1);
        let hu = net.add_arc(e, m + u, 1);
        net.add_arc(e, m + v, 1);
        handles.push(hu);
    }
    for v in 0..n {
        net.add_arc(m + v, sink, bound as i64);
    }
    if net.max_flow(source, sink) != m as i64 {
        return None;
    }
    let arcs = edges
        .iter()
        .zip(&handles)
        .map(|(&(u, v), &h)| if net.flow_on(h) == 1 { (u, v) } else { (v, u) })
        .collect();
    Some(Orientation::from_arcs(n, arcs))
}

/// Orientation minimizing the maximum out-degree, by binary search on the
/// bound with a flow feasibility check. The optimum equals `⌈∇₀(g)⌉`.
pub fn orient_min_out_degree(g: &Graph) -> Orientation {
    let fallback = orient_by_degeneracy(g);
    if g.m() == 0 {
        return fallback;
    }
    // ⌈m/n⌉ is a lower bound, the degeneracy orientation an upper bound.
    let mut lo = g.m().div_ceil(g.n()).max(1);
    let mut hi = fallback.max_out_degree;
    let mut best = fallback;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match orient_with_bound(g, mid) {
            Some(o) => {
                hi = o.max_out_degree.min(mid);
                best = o;
            }
            None => lo = mid + 1,
        }
    }
    if best.max_out_degree > lo {
        best = orient_with_bound(g, lo).expect("bound verified feasible by the search");
    }
    best
}
