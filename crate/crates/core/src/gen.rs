//! Seeded instance generators for every targeted graph class.
//!
//! All generators are deterministic in their arguments (ChaCha8 streams).

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// Default probability of deleting an edge after a maximal construction.
pub const DEFAULT_DELETE_P: f64 = 0.3;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits simple edges")
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Random maximal planar graph (`3n - 6` edges for `n >= 3`): stacked
/// triangulation grown by inserting each vertex into a random face, then
/// randomized by edge flips.
pub fn gen_maximal_planar(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed, 1);
    if n < 3 {
        return build(n, (1..n).map(|v| (0, v)));
    }
    // Faces are consistently oriented triangles; each directed edge belongs
    // to exactly one face.
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let mut owner: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let register = |faces: &Vec<[Vertex; 3]>, owner: &mut HashMap<(Vertex, Vertex), usize>, f: usize| {
        let [a, b, c] = faces[f];
        owner.insert((a, b), f);
        owner.insert((b, c), f);
        owner.insert((c, a), f);
    };
    for f in 0..2 {
        register(&faces, &mut owner, f);
    }
    edges.extend([(0, 1), (0, 2), (1, 2)]);
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        let len = faces.len();
        for g in [f, len - 2, len - 1] {
            register(&faces, &mut owner, g);
        }
        edges.extend([key(a, v), key(b, v), key(c, v)]);
    }
    let mut list: Vec<(Vertex, Vertex)> = edges.iter().copied().collect();
    for _ in 0..2 * n {
        let k = rng.gen_range(0..list.len());
        let (u, v) = list[k];
        let f1 = owner[&(u, v)];
        let f2 = owner[&(v, u)];
        let c = third(faces[f1], u, v);
        let d = third(faces[f2], v, u);
        if c == d || edges.contains(&key(c, d)) {
            continue;
        }
        // Quadrilateral u -> d -> v -> c; replace diagonal uv by cd.
        owner.remove(&(u, v));
        owner.remove(&(v, u));
        faces[f1] = [u, d, c];
        faces[f2] = [d, v, c];
        register(&faces, &mut owner, f1);
        register(&faces, &mut owner, f2);
        edges.remove(&(u, v));
        edges.insert(key(c, d));
        list[k] = key(c, d);
    }
    build(n, edges)
}

/// The vertex of an oriented face that follows the directed edge `a -> b`.
fn third(face: [Vertex; 3], a: Vertex, b: Vertex) -> Vertex {
    for i in 0..3 {
        if face[i] == a && face[(i + 1) % 3] == b {
            return face[(i + 2) % 3];
        }
    }
    unreachable!("directed edge {a}->{b} not on face {face:?}")
}

fn delete_edges(g: &Graph, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let kept: Vec<(Vertex, Vertex)> = g.edges().filter(|_| !rng.gen_bool(p)).collect();
    build(g.n(), kept)
}

/// Random planar graph on `n` vertices: maximal planar with each edge
/// deleted independently with probability `p`.
pub fn gen_planar_with(n: usize, seed: u64, p: f64) -> Graph {
    let base = gen_maximal_planar(n, seed);
    delete_edges(&base, p, &mut rng(seed, 2))
}

pub fn gen_planar(n: usize, seed: u64) -> Graph {
    gen_planar_with(n, seed, DEFAULT_DELETE_P)
}

/// Every edge of `g` replaced by a path of length two.
pub fn subdivide(g: &Graph) -> Graph {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let sub = edges
        .iter()
        .enumerate()
        .flat_map(|(k, &(u, v))| [(u, n + k), (v, n + k)]);
    build(n + edges.len(), sub)
}

/// Triangle-free planar graph with roughly `n` vertices: the subdivision of
/// a random planar graph on `max(3, n / 3)` vertices.
pub fn gen_triangle_free_planar(n: usize, seed: u64) -> Graph {
    subdivide(&gen_planar((n / 3).max(3), seed))
}

/// Bipartite planar graph on `n` vertices: a random subgraph of a near
/// square grid with shuffled labels.
pub fn gen_bipartite_planar(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed, 3);
    let w = (n as f64).sqrt().ceil().max(1.0) as usize;
    let mut edges = Vec::new();
    for v in 0..n {
        if v % w + 1 < w && v + 1 < n {
            edges.push((v, v + 1));
        }
        if v + w < n {
            edges.push((v, v + w));
        }
    }
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let kept = edges
        .into_iter()
        .filter(|_| !rng.gen_bool(DEFAULT_DELETE_P))
        .map(|(u, v)| (label[u], label[v]));
    build(n, kept)
}

/// Planar graph of girth at least five: a random planar graph with one
/// edge of every cycle of length three or four deleted, until none is left.
pub fn gen_girth5_planar(n: usize, seed: u64) -> Graph {
    let g = gen_planar(n, seed);
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    loop {
        let mut removed = false;
        for u in 0..n {
            let nbrs: Vec<Vertex> = adj[u].iter().copied().filter(|&v| v > u).collect();
            for v in nbrs {
                if short_cycle_through(&adj, u, v) {
                    adj[u].remove(&v);
                    adj[v].remove(&u);
                    removed = true;
                }
            }
        }
        if !removed {
            break;
        }
    }
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| adj[u].iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
        .collect();
    build(n, edges)
}

/// Whether the edge `uv` lies on a cycle of length three or four.
fn short_cycle_through(adj: &[BTreeSet<Vertex>], u: Vertex, v: Vertex) -> bool {
    for &a in &adj[u] {
        if a == v {
            continue;
        }
        if adj[v].contains(&a) {
            return true;
        }
        if adj[a].iter().any(|&b| b != u && b != v && adj[v].contains(&b)) {
            return true;
        }
    }
    false
}

/// Random outerplanar graph on `n` vertices: a random triangulation of a
/// polygon, edges deleted with probability `p`, labels shuffled.
pub fn gen_outerplanar(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed, 4);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    if n >= 2 {
        edges.extend((0..n - 1).map(|i| (i, i + 1)));
    }
    if n >= 3 {
        edges.push((0, n - 1));
        // Split polygon a..=b (with chord ab present) at a random apex.
        let mut stack = vec![(0, n - 1)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            let c = rng.gen_range(a + 1..b);
            if c > a + 1 {
                edges.push((a, c));
            }
            if b > c + 1 {
                edges.push((c, b));
            }
            stack.push((a, c));
            stack.push((c, b));
        }
    }
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let kept = edges
        .into_iter()
        .filter(|_| !rng.gen_bool(DEFAULT_DELETE_P))
        .map(|(u, v)| (label[u], label[v]));
    build(n, kept)
}

/// The two-degenerate family with domination number `gamma` whose `w^j`
/// neighborhoods need `gamma` outside dominators.
///
/// Ids: `v_i = i - 1`, `w^j = gamma + j - 1`,
/// `s_i^j = gamma + m + (j - 1) gamma + (i - 1)`.
pub fn g_gamma_m(gamma: usize, m: usize) -> Graph {
    assert!(gamma >= 1 && m >= 1, "need gamma, m >= 1");
    let v = |i: usize| i - 1;
    let w = |j: usize| gamma + j - 1;
    let s = |i: usize, j: usize| gamma + m + (j - 1) * gamma + (i - 1);
    let mut edges = Vec::new();
    for j in 1..=m {
        edges.push((v(1), w(j)));
        for i in 1..=gamma {
            edges.push((w(j), s(i, j)));
            edges.push((v(i), s(i, j)));
        }
    }
    build(gamma + m + gamma * m, edges)
}

/// Erdős–Rényi `G(n, d/n)`, sampled with geometric skips.
pub fn gen_sparse_er(n: usize, d: f64, seed: u64) -> Graph {
    let mut rng = rng(seed, 5);
    let p = if n == 0 { 0.0 } else { (d / n as f64).clamp(0.0, 1.0) };
    let mut edges = Vec::new();
    if p > 0.0 && n >= 2 {
        let log_q = (1.0 - p).ln();
        // Walk the pairs (u, v), u < v, in row-major order.
        let (mut u, mut v): (usize, i64) = (1, -1);
        while u < n {
            let r: f64 = rng.gen::<f64>();
            let skip = if p >= 1.0 { 0 } else { ((1.0 - r).ln() / log_q).floor() as i64 };
            v += 1 + skip;
            while u < n && v >= u as i64 {
                v -= u as i64;
                u += 1;
            }
            if u < n {
                edges.push((v as usize, u));
            }
        }
    }
    build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{certify, GraphClass};
    use crate::orientation::degeneracy_order;
    use crate::structure::girth;

    #[test]
    fn maximal_planar_edge_count() {
        for seed in 0..5 {
            let g = gen_maximal_planar(30, seed);
            assert_eq!(g.m(), 3 * 30 - 6);
            assert!(certify(&g, GraphClass::Planar).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_planar(50, 7), gen_planar(50, 7));
        assert_ne!(gen_planar(50, 7), gen_planar(50, 8));
        assert_eq!(gen_outerplanar(20, 1), gen_outerplanar(20, 1));
    }

    #[test]
    fn classes_are_certified() {
        for seed in 0..5 {
            assert!(certify(&gen_triangle_free_planar(40, seed), GraphClass::TriangleFreePlanar).unwrap());
            assert!(certify(&gen_bipartite_planar(40, seed), GraphClass::BipartitePlanar).unwrap());
            assert!(certify(&gen_girth5_planar(40, seed), GraphClass::Girth5Planar).unwrap());
            assert!(certify(&gen_outerplanar(40, seed), GraphClass::Outerplanar).unwrap());
        }
    }

    #[test]
    fn g_gamma_m_shape() {
        let tri = g_gamma_m(1, 1);
        assert_eq!((tri.n(), tri.m()), (3, 3));
        assert_eq!(girth(&tri), Some(3));
        let g = g_gamma_m(4, 20);
        assert_eq!(g.n(), 4 + 20 + 80);
        assert_eq!(degeneracy_order(&g).1, 2);
    }

    #[test]
    fn sparse_er_density() {
        let g = gen_sparse_er(2000, 4.0, 3);
        let avg = 2.0 * g.m() as f64 / 2000.0;
        assert!((avg - 4.0).abs() < 0.5, "average degree {avg}");
        assert_eq!(gen_sparse_er(10, 0.0, 1).m(), 0);
    }
}
