//! Greedy Phase 3: a countdown over residual degrees in which every red
//! vertex elects one dominator of currently maximum residual degree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::local::{max_residual_degree, recolor, NodeState, Runtime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    pub i: usize,
    /// `|P_i|`, the vertices elected in this step.
    pub picked: usize,
    /// `|R_i|`, red vertices when the step starts.
    pub red: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub selected: Vec<Vertex>,
    pub trace: Vec<GreedyStep>,
}

/// Runs the countdown `i = cap, ..., 0`. Each step costs two exchanges
/// (residual degrees, then elections) plus a recoloring round.
pub fn phase3_greedy(rt: &mut Runtime, g: &Graph, states: &mut [NodeState], cap: usize) -> Result<GreedyOutcome> {
    let start = max_residual_degree(states);
    if start > cap {
        return Err(Error::Contract(format!("residual degree {start} exceeds greedy cap {cap}")));
    }
    let mut out = GreedyOutcome::default();
    for i in (0..=cap).rev() {
        let red = states.iter().filter(|s| s.is_red()).count();
        let announced = rt.exchange("greedy", g, states, |_, own, _, _| (own.is_red(), own.residual_degree()));
        let picks = rt.exchange("greedy", g, &announced, |v, &(is_red, deg), nbrs, all| {
            if !is_red {
                return None;
            }
            std::iter::once(v)
                .chain(nbrs.iter().copied())
                .filter(|&u| if u == v { deg == i } else { all[u].1 == i })
                .min()
        });
        let mut elected: Vec<Vertex> = picks.into_iter().flatten().collect();
        elected.sort_unstable();
        elected.dedup();
        recolor(g, states, &elected);
        rt.charge("greedy.recolor", 1);
        out.trace.push(GreedyStep {
            i,
            picked: elected.len(),
            red,
        });
        out.selected.extend(elected);

        let max = max_residual_degree(states);
        if i >= 1 && max >= i {
            return Err(Error::Internal(format!("residual degree {max} survives step {i}")));
        }
    }
    if states.iter().any(NodeState::is_red) {
        return Err(Error::Internal("red vertices survive the countdown".into()));
    }
    // Every red vertex elects at most once over the whole countdown.
    let mut later = 0usize;
    for step in out.trace.iter().rev() {
        later += step.picked;
        if later > step.red {
            return Err(Error::Internal(format!(
                "{later} elections from step {} on exceed {} red vertices",
                step.i, step.red
            )));
        }
    }
    out.selected.sort_unstable();
    Ok(out)
}

/// Worst-case factor of the greedy Phase 3 against the optimum for the red
/// vertices, given subgraph density `nabla0` and residual cap `delta`.
///
/// For `delta >= 3 nabla0` this is
/// `nabla0 ln((2 delta - 4 nabla0 + 1) / (2 nabla0 + 1)) + 3 nabla0 + 1`;
/// below that, the number of red vertices per optimum vertex, `delta + 1`.
pub fn greedy_bound(nabla0: u64, delta: u64) -> f64 {
    if delta < 3 * nabla0 {
        return (delta + 1) as f64;
    }
    let n0 = nabla0 as f64;
    let d = delta as f64;
    n0 * ((2.0 * d - 4.0 * n0 + 1.0) / (2.0 * n0 + 1.0)).ln() + 3.0 * n0 + 1.0
}
