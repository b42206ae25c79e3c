mod common;

use common::*;
use localdom::local::{states_with_red, Runtime};
use localdom::lp::{round_bansal_umboh, solve_cover_lp_local};
use localdom::orientation::{degeneracy_order, orient_min_out_degree};
use localdom::{
    exact_lp_opt, exact_nabla0, gen, run_pipeline, ClassPreset, Graph, Phase3Variant, PipelineConfig, Rational,
    Vertex, VertexId,
};
use proptest::prelude::*;

fn preset_by_index(i: usize) -> (ClassPreset, fn(usize, u64) -> Graph) {
    match i % 5 {
        0 => (ClassPreset::planar(), gen::gen_planar),
        1 => (ClassPreset::triangle_free_planar(), gen::gen_triangle_free_planar),
        2 => (ClassPreset::bipartite_planar(), gen::gen_bipartite_planar),
        3 => (ClassPreset::girth5_planar(), gen::gen_girth5_planar),
        _ => (ClassPreset::outerplanar(), gen::gen_outerplanar),
    }
}

fn variant(lp: bool) -> Phase3Variant {
    if lp {
        Phase3Variant::Lp
    } else {
        Phase3Variant::Greedy
    }
}

/// Same graph with ids mapped through an increasing function.
fn relabel(g: &Graph, gaps: &[u64]) -> Graph {
    let mut next = 0u64;
    let mut map = Vec::with_capacity(g.n());
    for v in g.vertices() {
        next += 1 + gaps[v % gaps.len()];
        map.push(next);
    }
    let ids: Vec<VertexId> = map.clone();
    let edges = g.edges().map(|(u, v)| (map[u], map[v]));
    Graph::from_id_edges(ids, edges).unwrap()
}

fn ids(g: &Graph, vs: &[Vertex]) -> Vec<VertexId> {
    vs.iter().map(|&v| g.id(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pipeline_always_dominates(n in 1usize..60, seed in any::<u64>(), which in 0usize..5, lp in any::<bool>()) {
        let (preset, f) = preset_by_index(which);
        let g = f(n, seed);
        let run = run_pipeline(&g, &PipelineConfig::new(preset, variant(lp))).unwrap();
        let all: Vec<Vertex> = g.vertices().collect();
        prop_assert!(run.dominates);
        prop_assert!(dominates(&g, &run.selected(), &all));
    }

    #[test]
    fn locality_under_increasing_relabeling(
        n in 5usize..50,
        seed in any::<u64>(),
        which in 0usize..5,
        lp in any::<bool>(),
        gaps in prop::collection::vec(0u64..1000, 1..8),
    ) {
        let (preset, f) = preset_by_index(which);
        let g = f(n, seed);
        let h = relabel(&g, &gaps);
        let cfg = PipelineConfig::new(preset, variant(lp));
        let a = run_pipeline(&g, &cfg).unwrap();
        let b = run_pipeline(&h, &cfg).unwrap();
        let map: std::collections::HashMap<VertexId, VertexId> =
            g.vertices().map(|v| (g.id(v), h.id(v))).collect();
        let mapped: Vec<VertexId> = ids(&g, &a.selected()).iter().map(|id| map[id]).collect();
        prop_assert_eq!(mapped, ids(&h, &b.selected()));
        prop_assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn sequential_and_parallel_agree(n in 5usize..80, seed in any::<u64>(), which in 0usize..5, lp in any::<bool>()) {
        let (preset, f) = preset_by_index(which);
        let g = f(n, seed);
        let mut cfg = PipelineConfig::new(preset, variant(lp));
        let a = run_pipeline(&g, &cfg).unwrap();
        cfg.parallel = true;
        let b = run_pipeline(&g, &cfg).unwrap();
        prop_assert_eq!(a.selected(), b.selected());
        prop_assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn reruns_are_identical(n in 5usize..60, seed in any::<u64>(), which in 0usize..5, lp in any::<bool>()) {
        let (preset, f) = preset_by_index(which);
        let g = f(n, seed);
        let cfg = PipelineConfig::new(preset, variant(lp));
        let a = run_pipeline(&g, &cfg).unwrap();
        let b = run_pipeline(&g, &cfg).unwrap();
        prop_assert_eq!(a.report(&g, &cfg), b.report(&g, &cfg));
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..120, seed in any::<u64>(), which in 0usize..5) {
        let g = preset_by_index(which).1(n, seed);
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn orientation_within_degeneracy(n in 1usize..40, d in 0.5f64..8.0, seed in any::<u64>()) {
        let g = gen::gen_sparse_er(n, d, seed);
        let o = orient_min_out_degree(&g);
        prop_assert!(o.is_valid_for(&g));
        prop_assert!(o.max_out_degree <= degeneracy_order(&g).1);
        // The optimum is the ceiling of the maximum subgraph density.
        let dens = exact_nabla0(&g);
        prop_assert_eq!(Rational::from_integer(o.max_out_degree.into()), dens.ceil());
    }

    #[test]
    fn lp_solution_feasible_and_near_optimal(
        n in 2usize..30,
        d in 1.0f64..6.0,
        seed in any::<u64>(),
        mask in any::<u64>(),
        eps in prop::sample::select(vec![1.0, 0.5, 0.25]),
    ) {
        let g = gen::gen_sparse_er(n, d, seed);
        let red: Vec<Vertex> = g.vertices().filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        let x = solve_cover_lp_local(&mut Runtime::new(false), &g, &red, eps, g.max_degree()).unwrap();
        for &r in &red {
            let cov: f64 = closed(&g, r).iter().map(|&u| x.values[u]).sum();
            prop_assert!(cov >= 1.0 - 1e-9);
        }
        let opt = localdom::scalar::rational_to_f64(&exact_lp_opt(&g, &red).unwrap());
        prop_assert!(x.objective() <= (1.0 + eps) * opt + 1e-9);
        let d = orient_min_out_degree(&g).max_out_degree as u64;
        let rounded = round_bansal_umboh(&g, &red, &x, d).unwrap().union();
        prop_assert!(dominates(&g, &rounded, &red));
        prop_assert!(rounded.len() as f64 <= (2 * d + 1) as f64 * x.objective() + 1e-9);
    }

    #[test]
    fn lp_optimum_bounded_by_domination_number(n in 1usize..16, seed in any::<u64>(), mask in any::<u16>()) {
        let g = gen::gen_planar(n, seed);
        let red: Vec<Vertex> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let lp = exact_lp_opt(&g, &red).unwrap();
        prop_assert!(lp <= Rational::from_integer(brute_gamma(&g, &red).into()));
    }

    #[test]
    fn greedy_countdown_agrees_with_reference(n in 2usize..50, seed in any::<u64>(), mask in any::<u64>()) {
        let g = gen::gen_planar(n, seed);
        let red: Vec<Vertex> = g.vertices().filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        let mut states = states_with_red(&g, &red);
        let cap = g.max_degree();
        let out = localdom::greedy::phase3_greedy(&mut Runtime::new(false), &g, &mut states, cap).unwrap();
        let (expected, invariant) = greedy_countdown(&g, &red, cap);
        prop_assert!(invariant);
        prop_assert_eq!(out.selected, expected);
    }

    #[test]
    fn constant_rounds_within_a_preset(a in 10usize..200, b in 10usize..200, seed in any::<u64>(), which in 0usize..5, lp in any::<bool>()) {
        let (preset, f) = preset_by_index(which);
        let cfg = PipelineConfig::new(preset, variant(lp));
        let ra = run_pipeline(&f(a, seed), &cfg).unwrap();
        let rb = run_pipeline(&f(b, seed ^ 1), &cfg).unwrap();
        prop_assert_eq!(ra.trace.total(), rb.trace.total());
    }
}
