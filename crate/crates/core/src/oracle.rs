//! Exact centralized reference solvers for desk-scale instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rustworkx_core::petgraph::graph::UnGraph;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};
use crate::scalar::Scalar;
use crate::simplex::maximize;
use crate::structure::{contains_biclique, girth, is_bipartite};

/// Default branch-node budget of [`exact_min_dominating_set`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A minimum `Z` with `R ⊆ N[Z]`.
pub fn exact_min_dominating_set(g: &Graph, r: &[Vertex]) -> Result<Vec<Vertex>> {
    exact_min_dominating_set_with_budget(g, r, DEFAULT_BUDGET)
}

pub fn exact_min_dominating_set_with_budget(g: &Graph, r: &[Vertex], budget: u64) -> Result<Vec<Vertex>> {
    let mut targets = r.to_vec();
    targets.sort_unstable();
    targets.dedup();
    let mut slot = vec![usize::MAX; g.n()];
    for (i, &t) in targets.iter().enumerate() {
        slot[t] = i;
    }
    // covers[c]: targets dominated by c; dominators[i]: vertices dominating target i.
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut dominators: Vec<Vec<Vertex>> = vec![Vec::new(); targets.len()];
    for (i, &t) in targets.iter().enumerate() {
        for c in g.closed_neighborhood(t) {
            covers[c].push(i);
            dominators[i].push(c);
        }
    }
    let best = greedy_cover(&covers, targets.len());
    let mut bb = BranchAndBound {
        covers: &covers,
        dominators: &dominators,
        cover_count: vec![0; targets.len()],
        uncovered: targets.len(),
        forbidden: vec![false; g.n()],
        chosen: Vec::new(),
        best,
        nodes: 0,
        budget,
        mark: vec![0; g.n()],
        stamp: 0,
    };
    bb.search()?;
    let mut out = bb.best;
    out.sort_unstable();
    Ok(out)
}

fn greedy_cover(covers: &[Vec<usize>], targets: usize) -> Vec<Vertex> {
    let mut covered = vec![false; targets];
    let mut left = targets;
    let mut out = Vec::new();
    while left > 0 {
        let (best, _) = covers
            .iter()
            .enumerate()
            .map(|(c, list)| (c, list.iter().filter(|&&i| !covered[i]).count()))
            .max_by_key(|&(c, gain)| (gain, std::cmp::Reverse(c)))
            .expect("some dominator exists");
        for &i in &covers[best] {
            if !covered[i] {
                covered[i] = true;
                left -= 1;
            }
        }
        out.push(best);
    }
    out
}

struct BranchAndBound<'a> {
    covers: &'a [Vec<usize>],
    dominators: &'a [Vec<Vertex>],
    cover_count: Vec<u32>,
    uncovered: usize,
    forbidden: Vec<bool>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    mark: Vec<u64>,
    stamp: u64,
}

impl BranchAndBound<'_> {
    fn choose(&mut self, c: Vertex) {
        for &i in &self.covers[c] {
            if self.cover_count[i] == 0 {
                self.uncovered -= 1;
            }
            self.cover_count[i] += 1;
        }
        self.chosen.push(c);
    }

    fn unchoose(&mut self, c: Vertex) {
        for &i in &self.covers[c] {
            self.cover_count[i] -= 1;
            if self.cover_count[i] == 0 {
                self.uncovered += 1;
            }
        }
        self.chosen.pop();
    }

    fn allowed(&self, i: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.dominators[i].iter().copied().filter(|&c| !self.forbidden[c])
    }

    /// Uncovered targets with pairwise disjoint sets of allowed dominators
    /// each need their own dominator.
    fn packing_bound(&mut self, order: &[usize]) -> usize {
        self.stamp += 1;
        let mut count = 0;
        for &i in order {
            let fresh = self.allowed(i).all(|c| self.mark[c] != self.stamp);
            if fresh {
                count += 1;
                let stamp = self.stamp;
                for c in self.dominators[i].iter().copied().filter(|&c| !self.forbidden[c]) {
                    self.mark[c] = stamp;
                }
            }
        }
        count
    }

    fn search(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchAborted {
                nodes: self.nodes,
                cap: self.budget,
            });
        }
        if self.uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return Ok(());
        }
        let mut open: Vec<(usize, usize)> = (0..self.cover_count.len())
            .filter(|&i| self.cover_count[i] == 0)
            .map(|i| (self.allowed(i).count(), i))
            .collect();
        open.sort_unstable();
        if open[0].0 == 0 {
            return Ok(());
        }
        let order: Vec<usize> = open.iter().map(|&(_, i)| i).collect();
        if self.chosen.len() + self.packing_bound(&order) >= self.best.len() {
            return Ok(());
        }
        let target = order[0];
        let mut branch: Vec<(usize, Vertex)> = self
            .allowed(target)
            .map(|c| {
                let gain = self.covers[c].iter().filter(|&&i| self.cover_count[i] == 0).count();
                (gain, c)
            })
            .collect();
        branch.sort_by_key(|&(gain, c)| (std::cmp::Reverse(gain), c));
        let mut banned = Vec::new();
        let mut result = Ok(());
        for (_, c) in branch {
            self.choose(c);
            result = self.search();
            self.unchoose(c);
            if result.is_err() {
                break;
            }
            self.forbidden[c] = true;
            banned.push(c);
        }
        for c in banned {
            self.forbidden[c] = false;
        }
        result
    }
}

/// Optimum of `min Σ x_u` s.t. `Σ_{u ∈ N[r]} x_u >= 1` for all `r ∈ R`,
/// `x >= 0`, together with an optimal `x`. Solved through the packing dual
/// `max Σ y_r` s.t. `Σ_{r ∈ N[u] ∩ R} y_r <= 1`, whose constraint
/// multipliers are an optimal `x`.
pub fn lp_optimum<T: Scalar>(g: &Graph, r: &[Vertex], max_pivots: u64) -> Result<(T, Vec<T>)> {
    let mut targets = r.to_vec();
    targets.sort_unstable();
    targets.dedup();
    let mut is_target = vec![usize::MAX; g.n()];
    for (i, &t) in targets.iter().enumerate() {
        is_target[t] = i;
    }
    let mut rows = Vec::new();
    let mut owners = Vec::new();
    for u in g.vertices() {
        let mut row = vec![T::zero(); targets.len()];
        let mut any = false;
        for w in g.closed_neighborhood(u) {
            if is_target[w] != usize::MAX {
                row[is_target[w]] = T::one();
                any = true;
            }
        }
        if any {
            rows.push(row);
            owners.push(u);
        }
    }
    let b = vec![T::one(); rows.len()];
    let c = vec![T::one(); targets.len()];
    let sol = maximize(&rows, &b, &c, max_pivots)?;
    let mut x = vec![T::zero(); g.n()];
    for (k, u) in owners.into_iter().enumerate() {
        x[u] = sol.dual[k].clone();
    }
    Ok((sol.value, x))
}

/// Exact LP optimum in rational arithmetic.
pub fn exact_lp_opt(g: &Graph, r: &[Vertex]) -> Result<BigRational> {
    Ok(lp_optimum::<BigRational>(g, r, 1_000_000)?.0)
}

/// `max |E(H)| / |V(H)|` over subgraphs `H`, exactly.
///
/// Starts from the whole graph's density and repeatedly asks a min-cut
/// whether some subgraph beats the current ratio `p/q`; the source side of
/// the cut is such a subgraph, so the ratio strictly increases until no
/// improvement exists.
pub fn exact_nabla0(g: &Graph) -> BigRational {
    if g.n() == 0 || g.m() == 0 {
        return BigRational::zero();
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let (mut p, mut q) = (edges.len() as i64, g.n() as i64);
    loop {
        let m = edges.len();
        let (s, t) = (0, 1);
        let mut net = FlowNetwork::new(2 + m + g.n());
        let inf = i64::MAX / 4;
        for (k, &(u, v)) in edges.iter().enumerate() {
            net.add_arc(s, 2 + k, q);
            net.add_arc(2 + k, 2 + m + u, inf);
            net.add_arc(2 + k, 2 + m + v, inf);
        }
        for v in g.vertices() {
            net.add_arc(2 + m + v, t, p);
        }
        let flow = net.max_flow(s, t);
        if q * m as i64 - flow <= 0 {
            break;
        }
        let side = net.source_side(s);
        let verts = g.vertices().filter(|&v| side[2 + m + v]).count() as i64;
        let inner = edges.iter().filter(|&&(u, v)| side[2 + m + u] && side[2 + m + v]).count() as i64;
        debug_assert!(inner * q > p * verts);
        p = inner;
        q = verts;
    }
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn to_petgraph(g: &Graph, apex: bool) -> UnGraph<(), ()> {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n() + 1, g.m() + g.n());
    let nodes: Vec<_> = g.vertices().map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    if apex {
        let a = pg.add_node(());
        for &n in &nodes {
            pg.add_edge(a, n, ());
        }
    }
    pg
}

pub fn is_planar(g: &Graph) -> bool {
    rustworkx_core::planar::is_planar(&to_petgraph(g, false))
}

/// Outerplanar iff planar after adding a vertex adjacent to everything.
pub fn is_outerplanar(g: &Graph) -> bool {
    rustworkx_core::planar::is_planar(&to_petgraph(g, true))
}

/// Structural classes that generated instances are certified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Planar,
    TriangleFreePlanar,
    BipartitePlanar,
    Girth5Planar,
    Outerplanar,
    /// No `K_{3,t}` subgraph.
    K3tFree(usize),
}

/// Checks membership; `Err` only if a biclique search hits its cap.
pub fn certify(g: &Graph, class: GraphClass) -> Result<bool> {
    let girth_at_least = |k: usize| girth(g).map_or(true, |c| c >= k);
    Ok(match class {
        GraphClass::Planar => is_planar(g),
        GraphClass::TriangleFreePlanar => is_planar(g) && girth_at_least(4),
        GraphClass::BipartitePlanar => is_planar(g) && is_bipartite(g),
        GraphClass::Girth5Planar => is_planar(g) && girth_at_least(5),
        GraphClass::Outerplanar => is_outerplanar(g),
        GraphClass::K3tFree(t) => !contains_biclique(g, 3, t.max(3))?,
    })
}
