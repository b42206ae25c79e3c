//! Phase 2 for `K_{3,t}`-free inputs: select pairs of vertices that share
//! many red neighbors.

use std::collections::HashMap;

use log::warn;

use crate::error::{Error, Result};
use crate::general::PhaseOutput;
use crate::graph::{Graph, Vertex};
use crate::local::{max_residual_degree, NodeState, Runtime};

/// `B_v = {z != v : |N_R(v) ∩ N_R(z)| >= threshold}` for every `v`, computed
/// from radius-2 views. Candidates `z` share a red neighbor with `v`, so
/// they lie within distance two.
pub fn common_neighbor_sets(
    rt: &mut Runtime,
    g: &Graph,
    states: &[NodeState],
    threshold: u64,
) -> Result<Vec<Vec<Vertex>>> {
    rt.run_ball_phase("phase2", g, states, 2, |ball| {
        let v = ball.center();
        let mut counts: HashMap<Vertex, u64> = HashMap::new();
        for &w in &ball.state(v)?.residual {
            // w is red, so it lies in N_R(z) for every neighbor z.
            for &z in ball.neighbors(w)?.iter() {
                if z != v {
                    *counts.entry(z).or_default() += 1;
                }
            }
        }
        let mut b: Vec<Vertex> = counts
            .into_iter()
            .filter(|&(_, c)| c >= threshold)
            .map(|(z, _)| z)
            .collect();
        b.sort_unstable();
        Ok(b)
    })
}

/// `D2 = ⋃_{v ∈ W} ({v} ∪ B_v)` with `W = {v : B_v != ∅}`.
///
/// `max_b` is the promised bound on `|B_v|`; larger sets are reported as a
/// promise violation (fatal when `strict`).
pub fn phase2_k3t(
    rt: &mut Runtime,
    g: &Graph,
    states: &mut [NodeState],
    threshold: u64,
    max_b: usize,
    strict: bool,
) -> Result<PhaseOutput> {
    let b = common_neighbor_sets(rt, g, states, threshold)?;
    let mut out = PhaseOutput::default();
    let mut selected = vec![false; g.n()];
    for v in g.vertices() {
        for &z in &b[v] {
            if b[z].binary_search(&v).is_err() {
                return Err(Error::Internal(format!(
                    "common-neighbor relation not symmetric at {} / {}",
                    g.id(v),
                    g.id(z)
                )));
            }
            selected[z] = true;
        }
        if !b[v].is_empty() {
            selected[v] = true;
        }
        if b[v].len() > max_b {
            let msg = format!("|B_v| = {} > {max_b} at vertex {}", b[v].len(), g.id(v));
            if strict {
                return Err(Error::PromiseViolated(msg));
            }
            warn!("{msg}");
            out.warnings.push(msg);
        }
    }
    out.selected = g.vertices().filter(|&v| selected[v]).collect();
    rt.recolor_after_selection("phase2.recolor", g, states, &out.selected);
    Ok(out)
}

/// Whether every residual degree is at most `cap`, and the maximum seen.
pub fn residual_cap_check(states: &[NodeState], cap: u64) -> (bool, usize) {
    let max = max_residual_degree(states);
    (max as u64 <= cap, max)
}
