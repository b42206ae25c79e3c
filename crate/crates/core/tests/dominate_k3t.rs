mod common;

use common::*;
use localdom::general::phase1;
use localdom::k3t::{common_neighbor_sets, phase2_k3t, residual_cap_check};
use localdom::local::{initial_states, Color, NodeState, Runtime};
use localdom::preset::{rational, Phase2Rule};
use localdom::{gen, ClassPreset, Graph, Phase3Variant, Vertex};

fn after_phase1(g: &Graph, preset: &ClassPreset) -> (Vec<NodeState>, Vec<Vertex>) {
    let mut states = initial_states(g);
    let d1 = phase1(&mut Runtime::new(false), g, &mut states, &preset.params).unwrap();
    (states, d1)
}

/// `B_v` straight from the definition.
fn brute_b(g: &Graph, states: &[NodeState], v: Vertex, threshold: usize) -> Vec<Vertex> {
    let red = |x: Vertex| states[x].color == Color::Red;
    g.vertices()
        .filter(|&z| z != v)
        .filter(|&z| {
            g.neighbors(v)
                .iter()
                .filter(|&&x| red(x) && g.has_edge(z, x))
                .count()
                >= threshold
        })
        .collect()
}

#[test]
fn preset_constants() {
    let planar = ClassPreset::planar();
    assert_eq!(planar.phase2, Phase2Rule::CommonNeighbors { threshold: 10 });
    assert_eq!(planar.residual_cap, 30);
    let tf = ClassPreset::triangle_free_planar();
    assert_eq!((tf.common_neighbor_threshold(), tf.residual_cap), (Some(7), 18));
    let bp = ClassPreset::bipartite_planar();
    assert_eq!((bp.common_neighbor_threshold(), bp.residual_cap), (Some(7), 18));
    let g5 = ClassPreset::girth5_planar();
    assert_eq!((g5.common_neighbor_threshold(), g5.residual_cap), (None, 3));
    let op = ClassPreset::outerplanar();
    assert_eq!((op.common_neighbor_threshold(), op.residual_cap), (None, 9));
}

#[test]
fn guarantees_follow_epsilon() {
    for (eps_num, eps_den) in [(1, 1), (1, 2), (1, 10)] {
        let eps = eps_num as f64 / eps_den as f64;
        let with = |p: ClassPreset| p.with_epsilon(rational(eps_num, eps_den)).unwrap().guarantee(Phase3Variant::Lp);
        assert!((with(ClassPreset::planar()) - (11.0 + eps)).abs() < 1e-12);
        assert!((with(ClassPreset::triangle_free_planar()) - (8.0 + eps)).abs() < 1e-12);
        assert!((with(ClassPreset::bipartite_planar()) - (7.0 + eps)).abs() < 1e-12);
        assert!((with(ClassPreset::girth5_planar()) - 7.0).abs() < 1e-12);
        assert!((with(ClassPreset::outerplanar()) - (8.0 + eps)).abs() < 1e-12);
    }
}

#[test]
fn k3t_preset_derives_threshold_and_cap() {
    let p = ClassPreset::k3t_free(4, 5, None).unwrap();
    // nn = 5, 2 nn - 1 = 9.
    assert_eq!(p.common_neighbor_threshold(), Some(9 * 5 + 1));
    assert_eq!(p.residual_cap, 81 * 5 + 9);
    let tight = ClassPreset::k3t_free(4, 5, Some(2)).unwrap();
    assert_eq!(tight.common_neighbor_threshold(), Some(16));
    assert_eq!(ClassPreset::by_name("k3t:4:5").unwrap().residual_cap, p.residual_cap);
}

#[test]
fn pair_sharing_threshold_red_neighbors() {
    let g = biclique(2, 10);
    let mut states = initial_states(&g);
    let mut rt = Runtime::new(false);
    let b = common_neighbor_sets(&mut rt, &g, &states, 10).unwrap();
    assert_eq!(b[0], vec![1]);
    assert_eq!(b[1], vec![0]);
    assert!(b[2..].iter().all(Vec::is_empty));
    let out = phase2_k3t(&mut rt, &g, &mut states, 10, 3, true).unwrap();
    assert_eq!(out.selected, vec![0, 1]);
    assert_eq!(rt.trace.rounds_of("phase2"), 4);
}

#[test]
fn below_threshold_selects_nothing() {
    let g = biclique(2, 9);
    let mut states = initial_states(&g);
    let out = phase2_k3t(&mut Runtime::new(false), &g, &mut states, 10, 3, true).unwrap();
    assert!(out.selected.is_empty());
}

#[test]
fn oversized_b_warns_or_aborts() {
    // Five hubs over ten shared leaves: every hub sees four partners.
    let g = biclique(5, 10);
    let mut states = initial_states(&g);
    let out = phase2_k3t(&mut Runtime::new(false), &g, &mut states, 10, 3, false).unwrap();
    assert_eq!(out.selected, vec![0, 1, 2, 3, 4]);
    assert_eq!(out.warnings.len(), 5);
    let mut states = initial_states(&g);
    assert!(phase2_k3t(&mut Runtime::new(false), &g, &mut states, 10, 3, true).is_err());
}

#[test]
fn common_neighbor_sets_match_definition_and_are_symmetric() {
    for seed in 0..10 {
        let g = gen::gen_planar(150, seed);
        let preset = ClassPreset::planar();
        let (states, d1) = after_phase1(&g, &preset);
        for threshold in [2, 3, 10] {
            let b = common_neighbor_sets(&mut Runtime::new(false), &g, &states, threshold).unwrap();
            for v in g.vertices() {
                assert_eq!(b[v], brute_b(&g, &states, v, threshold as usize));
                for &z in &b[v] {
                    assert!(b[z].contains(&v));
                }
                if threshold == 10 && d1.contains(&v) {
                    assert!(b[v].is_empty());
                }
            }
            if threshold == 10 {
                for v in g.vertices() {
                    assert!(b[v].iter().all(|z| !d1.contains(z)));
                }
            }
        }
    }
}

#[test]
fn triangle_free_b_sets_have_at_most_three_members() {
    let preset = ClassPreset::triangle_free_planar();
    for seed in 0..20 {
        let g = gen::gen_triangle_free_planar(200, seed);
        let (states, _) = after_phase1(&g, &preset);
        let b = common_neighbor_sets(&mut Runtime::new(false), &g, &states, 7).unwrap();
        assert!(b.iter().all(|set| set.len() <= 3));
    }
}

fn residual_after_phase2(g: &Graph, preset: &ClassPreset) -> usize {
    let (mut states, _) = after_phase1(g, preset);
    if let Some(threshold) = preset.common_neighbor_threshold() {
        phase2_k3t(&mut Runtime::new(false), g, &mut states, threshold, 3, true).unwrap();
    }
    let (ok, max) = residual_cap_check(&states, preset.residual_cap);
    assert_eq!(ok, max as u64 <= preset.residual_cap);
    max
}

#[test]
fn residual_caps_on_generated_classes() {
    for seed in 0..15 {
        assert!(residual_after_phase2(&gen::gen_planar(200, seed), &ClassPreset::planar()) <= 30);
        assert!(residual_after_phase2(&gen::gen_maximal_planar(200, seed), &ClassPreset::planar()) <= 30);
        let tf = ClassPreset::triangle_free_planar();
        assert!(residual_after_phase2(&gen::gen_triangle_free_planar(200, seed), &tf) <= 18);
        let bp = ClassPreset::bipartite_planar();
        assert!(residual_after_phase2(&gen::gen_bipartite_planar(200, seed), &bp) <= 18);
        assert!(residual_after_phase2(&gen::gen_girth5_planar(200, seed), &ClassPreset::girth5_planar()) <= 3);
        assert!(residual_after_phase2(&gen::gen_outerplanar(200, seed), &ClassPreset::outerplanar()) <= 9);
    }
}

#[test]
fn dodecahedron_girth5_cap() {
    let g = dodecahedron();
    assert_eq!(localdom::structure::girth(&g), Some(5));
    assert!(residual_after_phase2(&g, &ClassPreset::girth5_planar()) <= 3);
}

/// Polygon `0..n` triangulated by a fan from 0 and, alternatively, by a
/// zigzag; both maximal outerplanar.
fn maximal_outerplanar(n: usize, zigzag: bool) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    if zigzag {
        let (mut lo, mut hi) = (0, n - 1);
        let mut left = true;
        while hi - lo > 2 {
            if left {
                edges.push((lo + 1, hi));
                lo += 1;
            } else {
                edges.push((lo, hi - 1));
                hi -= 1;
            }
            left = !left;
        }
    } else {
        edges.extend((2..n - 1).map(|i| (0, i)));
    }
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn maximal_outerplanar_cap() {
    for n in [10, 40, 200] {
        for zigzag in [false, true] {
            let g = maximal_outerplanar(n, zigzag);
            assert!(localdom::oracle::is_outerplanar(&g));
            assert_eq!(g.m(), 2 * n - 3);
            assert!(residual_after_phase2(&g, &ClassPreset::outerplanar()) <= 9);
        }
    }
}

#[test]
fn edgeless_graph_has_zero_residual() {
    assert_eq!(residual_after_phase2(&Graph::empty(4), &ClassPreset::planar()), 0);
}

#[test]
fn custom_k3t_preset_on_gamma_m() {
    let g = gen::g_gamma_m(3, 6);
    assert!(!localdom::structure::contains_biclique(&g, 3, 3).unwrap());
    let preset = ClassPreset::k3t_free(2, 3, None).unwrap();
    assert!(residual_after_phase2(&g, &preset) as u64 <= preset.residual_cap);
}
