//! Structural predicates: biclique subgraphs, girth, bipartiteness.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_BICLIQUE_CAP: u64 = 100_000_000;

/// True iff `K_{s,t}` is a (not necessarily induced) subgraph of `g`.
pub fn contains_biclique(g: &Graph, s: usize, t: usize) -> Result<bool> {
    contains_biclique_with_cap(g, s, t, DEFAULT_BICLIQUE_CAP)
}

/// Like [`contains_biclique`], but gives up with [`Error::SearchAborted`]
/// after `cap` search nodes instead of running unbounded.
///
/// The search picks the smallest member `a` of the `s`-side, restricts the
/// other members to vertices sharing at least `t` neighbors with `a`, and
/// grows the side while tracking the common neighborhood.
pub fn contains_biclique_with_cap(g: &Graph, s: usize, t: usize, cap: u64) -> Result<bool> {
    assert!(s >= 1 && s <= t, "need 1 <= s <= t");
    let mut nodes = 0u64;
    let mut counts = vec![0usize; g.n()];
    for a in g.vertices() {
        if g.degree(a) < t {
            continue;
        }
        if s == 1 {
            return Ok(true);
        }
        let mut touched = Vec::new();
        for &w in g.neighbors(a) {
            for &b in g.neighbors(w) {
                if b > a {
                    if counts[b] == 0 {
                        touched.push(b);
                    }
                    counts[b] += 1;
                }
            }
        }
        let mut candidates: Vec<Vertex> = touched.iter().copied().filter(|&b| counts[b] >= t).collect();
        for b in touched {
            counts[b] = 0;
        }
        candidates.sort_unstable();
        let common = g.neighbors(a).to_vec();
        if extend(g, &candidates, 0, s - 1, t, &common, &mut nodes, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    candidates: &[Vertex],
    from: usize,
    remaining: usize,
    t: usize,
    common: &[Vertex],
    nodes: &mut u64,
    cap: u64,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(common.len() >= t);
    }
    for i in from..candidates.len() {
        if candidates.len() - i < remaining {
            break;
        }
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::SearchAborted { nodes: *nodes, cap });
        }
        let b = candidates[i];
        let next: Vec<Vertex> = common.iter().copied().filter(|&w| g.has_edge(w, b)).collect();
        if next.len() >= t && extend(g, candidates, i + 1, remaining - 1, t, &next, nodes, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    for root in g.vertices() {
        let mut seen = vec![root];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v] + 1 >= b {
                    break;
                }
            }
            for &u in g.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    seen.push(u);
                    queue.push_back(u);
                } else if parent[v] != u {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        for v in seen {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    best
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for root in g.vertices() {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if side[u] == u8::MAX {
                    side[u] = 1 - side[v];
                    stack.push(u);
                } else if side[u] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}
