//! Reference computations shared by the integration tests. Everything here
//! is deliberately naive and independent of the library's own solvers.

#![allow(dead_code)]

use localdom::{Graph, Vertex};

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
}

pub fn biclique(s: usize, t: usize) -> Graph {
    Graph::from_edges(s + t, (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b)))).unwrap()
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).unwrap()
}

/// The dodecahedron: outer 5-cycle, middle 10-cycle, inner 5-cycle.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((15 + i, 5 + (2 * i + 1) % 10));
    }
    for i in 0..10 {
        edges.push((5 + i, 5 + (i + 1) % 10));
    }
    Graph::from_edges(20, edges).unwrap()
}

pub fn closed(g: &Graph, v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    out.extend_from_slice(g.neighbors(v));
    out
}

/// Whether every target is in `set` or adjacent to a member.
pub fn dominates(g: &Graph, set: &[Vertex], targets: &[Vertex]) -> bool {
    targets
        .iter()
        .all(|&t| set.contains(&t) || g.neighbors(t).iter().any(|u| set.contains(u)))
}

/// Minimum size of a set dominating `targets`, by exhaustive search over
/// subsets in order of size. Only for small graphs.
pub fn brute_gamma(g: &Graph, targets: &[Vertex]) -> usize {
    if targets.is_empty() {
        return 0;
    }
    let n = g.n();
    assert!(n <= 24, "exhaustive search needs a tiny graph");
    let masks: Vec<u32> = g
        .vertices()
        .map(|v| closed(g, v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let want = targets.iter().fold(0u32, |m, &t| m | 1 << t);
    for k in 1..=n {
        if subsets_of_size(n, k).any(|s| s.iter().fold(0u32, |m, &v| m | masks[v]) & want == want) {
            return k;
        }
    }
    unreachable!("the whole vertex set dominates")
}

/// All `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Densest-subgraph value `max |E(H)| / |V(H)|` by enumerating vertex sets.
pub fn brute_nabla0(g: &Graph) -> (usize, usize) {
    let n = g.n();
    assert!(n <= 16);
    let mut best = (0usize, 1usize);
    for mask in 1u32..(1 << n) {
        let verts = mask.count_ones() as usize;
        let edges = g.edges().filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
        if edges * best.1 > best.0 * verts {
            best = (edges, verts);
        }
    }
    best
}

/// Rechecks the four pseudo-cover clauses: length at most kappa, each
/// member strong for what is left, each member covering at least mu of what
/// is left, at most nu left at the end.
pub fn check_pseudocover(
    g: &Graph,
    w: &[Vertex],
    seq: &[Vertex],
    kappa: usize,
    mu: usize,
    nu: usize,
) -> Result<(), String> {
    if seq.len() > kappa {
        return Err(format!("length {} > {kappa}", seq.len()));
    }
    let mut left: Vec<Vertex> = w.to_vec();
    left.sort_unstable();
    left.dedup();
    for (i, &z) in seq.iter().enumerate() {
        let nz = closed(g, z);
        let hit = left.iter().filter(|x| nz.contains(x)).count();
        if hit * kappa < left.len() {
            return Err(format!("member {i} hits {hit} of {}", left.len()));
        }
        if hit < mu {
            return Err(format!("member {i} hits {hit} < {mu}"));
        }
        left.retain(|x| !nz.contains(x));
    }
    if left.len() > nu {
        return Err(format!("{} left > {nu}", left.len()));
    }
    Ok(())
}

/// Step-by-step greedy countdown: at step `i` every red vertex elects the
/// smallest vertex in its closed neighborhood whose red-neighbor count is
/// exactly `i`. Returns the elected set and whether, after every step
/// `i >= 1`, all red-neighbor counts were below `i`.
pub fn greedy_countdown(g: &Graph, red: &[Vertex], cap: usize) -> (Vec<Vertex>, bool) {
    let mut is_red = vec![false; g.n()];
    for &v in red {
        is_red[v] = true;
    }
    let red_degree =
        |is_red: &[bool], v: Vertex| g.neighbors(v).iter().filter(|&&u| is_red[u]).count();
    let mut selected = Vec::new();
    let mut invariant = true;
    for i in (0..=cap).rev() {
        let deg: Vec<usize> = g.vertices().map(|v| red_degree(&is_red, v)).collect();
        let mut elected: Vec<Vertex> = g
            .vertices()
            .filter(|&v| is_red[v])
            .filter_map(|v| closed(g, v).into_iter().filter(|&u| deg[u] == i).min())
            .collect();
        elected.sort_unstable();
        elected.dedup();
        for &u in &elected {
            is_red[u] = false;
            for &x in g.neighbors(u) {
                is_red[x] = false;
            }
        }
        selected.extend(elected);
        if i >= 1 && g.vertices().any(|v| red_degree(&is_red, v) >= i) {
            invariant = false;
        }
    }
    selected.sort_unstable();
    (selected, invariant)
}

/// Minimum out-degree over all orientations, by trying every orientation.
pub fn brute_orientation(g: &Graph) -> usize {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    assert!(edges.len() <= 20);
    let mut best = usize::MAX;
    for mask in 0u32..(1 << edges.len()) {
        let mut out = vec![0usize; g.n()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            out[if mask >> k & 1 == 1 { u } else { v }] += 1;
        }
        best = best.min(out.into_iter().max().unwrap_or(0));
    }
    if edges.is_empty() {
        0
    } else {
        best
    }
}
