//! Phases 1 and 2 of the general bounded-expansion algorithm: neighborhoods
//! that need many outside dominators, pseudo-covers, and domination
//! sequences.

use std::collections::{BTreeSet, HashMap};

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::local::{max_residual_degree, Ball, NodeState, Runtime, Topology};
use crate::params::ClassParams;

/// Default search-node budget for one pseudo-cover enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Selected vertices of a phase plus non-fatal findings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseOutput {
    pub selected: Vec<Vertex>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct Phase2Options {
    /// Abort on evidence that the input breaks its class promise.
    pub strict: bool,
    pub enumeration_cap: u64,
}

impl Default for Phase2Options {
    fn default() -> Self {
        Phase2Options {
            strict: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn union(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn first_zero(&self, len: usize) -> Option<usize> {
        (0..len).find(|&i| !self.get(i))
    }
}

/// Whether some `A` with `v ∉ A`, `|A| <= k` dominates the open neighborhood
/// of `v`. Needs the radius-2 view around `v`.
pub fn neighborhood_dominatable<T: Topology>(topo: &T, v: Vertex, k: usize) -> Result<bool> {
    let targets = topo.neighbors_of(v)?.into_owned();
    if targets.is_empty() {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    // Candidate dominators are the closed neighborhoods of the targets; the
    // mask of a candidate is the set of targets it covers.
    let mut slot: HashMap<Vertex, usize> = HashMap::new();
    let mut masks: Vec<Bits> = Vec::new();
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); targets.len()];
    for (i, &u) in targets.iter().enumerate() {
        let nbrs = topo.neighbors_of(u)?;
        for c in std::iter::once(u).chain(nbrs.iter().copied()) {
            if c == v {
                continue;
            }
            let next = masks.len();
            let idx = *slot.entry(c).or_insert(next);
            if idx == next {
                masks.push(Bits::new(targets.len()));
            }
            masks[idx].set(i);
            covering[i].push(idx);
        }
    }
    for list in &mut covering {
        list.sort_by_key(|&c| std::cmp::Reverse(masks[c].count()));
    }
    let widest = masks.iter().map(Bits::count).max().unwrap_or(0);
    let search = Search {
        masks: &masks,
        covering: &covering,
        len: targets.len(),
        widest,
    };
    Ok(search.run(&Bits::new(targets.len()), k))
}

struct Search<'a> {
    masks: &'a [Bits],
    covering: &'a [Vec<usize>],
    len: usize,
    widest: usize,
}

impl Search<'_> {
    fn run(&self, covered: &Bits, budget: usize) -> bool {
        let Some(first) = covered.first_zero(self.len) else {
            return true;
        };
        if budget == 0 || self.len - covered.count() > budget * self.widest {
            return false;
        }
        self.covering[first]
            .iter()
            .any(|&c| self.run(&covered.union(&self.masks[c]), budget - 1))
    }
}

/// Phase 1: select every vertex whose neighborhood cannot be dominated by
/// `2 nn - 1` other vertices.
pub fn phase1(rt: &mut Runtime, g: &Graph, states: &mut [NodeState], params: &ClassParams) -> Result<Vec<Vertex>> {
    let budget = params.d1_budget();
    let flags = rt.run_ball_phase("phase1", g, states, 2, |ball: &Ball<'_, NodeState>| {
        Ok(!neighborhood_dominatable(ball, ball.center(), budget)?)
    })?;
    let d1: Vec<Vertex> = g.vertices().filter(|&v| flags[v]).collect();
    rt.recolor_after_selection("phase1.recolor", g, states, &d1);
    Ok(d1)
}

/// `|N[z] ∩ W|` for every `z` with a nonzero count, keyed by vertex.
fn closed_counts<T: Topology>(topo: &T, w: &[Vertex]) -> Result<HashMap<Vertex, usize>> {
    let mut counts: HashMap<Vertex, usize> = HashMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
        for &z in topo.neighbors_of(x)?.iter() {
            *counts.entry(z).or_default() += 1;
        }
    }
    Ok(counts)
}

/// `{z : |N[z] ∩ W| >= |W| / kappa}`. With `W` empty every vertex qualifies.
pub fn lambda_strong_vertices(g: &Graph, w: &[Vertex], params: &ClassParams) -> Vec<Vertex> {
    if w.is_empty() {
        return g.vertices().collect();
    }
    let kappa = params.kappa() as usize;
    let counts = closed_counts(g, w).expect("whole-graph lookups cannot fail");
    let mut out: Vec<Vertex> = counts
        .into_iter()
        .filter(|&(_, c)| c * kappa >= w.len())
        .map(|(z, _)| z)
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCover {
    pub target: Vec<Vertex>,
    pub sequence: Vec<Vertex>,
}

/// Rechecks the four defining clauses; returns the first failing one.
pub fn verify_pseudocover<T: Topology>(
    topo: &T,
    cover: &PseudoCover,
    params: &ClassParams,
) -> Result<std::result::Result<(), String>> {
    let kappa = params.kappa() as usize;
    if cover.sequence.len() > kappa {
        return Ok(Err(format!("length {} exceeds kappa = {kappa}", cover.sequence.len())));
    }
    let mut remaining: BTreeSet<Vertex> = cover.target.iter().copied().collect();
    for (i, &z) in cover.sequence.iter().enumerate() {
        let mut hit: BTreeSet<Vertex> = topo.neighbors_of(z)?.iter().copied().collect();
        hit.insert(z);
        let hit: Vec<Vertex> = remaining.intersection(&hit).copied().collect();
        if hit.len() * kappa < remaining.len() {
            return Ok(Err(format!("position {i}: not lambda-strong")));
        }
        if (hit.len() as u64) < params.mu() {
            return Ok(Err(format!("position {i}: covers {} < mu", hit.len())));
        }
        for x in hit {
            remaining.remove(&x);
        }
    }
    if remaining.len() as u64 > params.nu() {
        return Ok(Err(format!("{} targets left uncovered, more than nu", remaining.len())));
    }
    Ok(Ok(()))
}

fn subtract_closed<T: Topology>(topo: &T, remaining: &[Vertex], z: Vertex) -> Result<Vec<Vertex>> {
    let nbrs = topo.neighbors_of(z)?;
    Ok(remaining
        .iter()
        .copied()
        .filter(|&x| x != z && nbrs.binary_search(&x).is_err())
        .collect())
}

/// Every pseudo-cover of `W`, depth-first with candidates in id order.
/// Fails with [`Error::SearchAborted`] once more than `cap` search nodes have
/// been visited.
pub fn enumerate_pseudocovers<T: Topology>(
    topo: &T,
    w: &[Vertex],
    params: &ClassParams,
    cap: u64,
) -> Result<Vec<PseudoCover>> {
    let mut target = w.to_vec();
    target.sort_unstable();
    target.dedup();
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut seq = Vec::new();
    enumerate_rec(topo, &target, &target, params, cap, &mut nodes, &mut seq, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec<T: Topology>(
    topo: &T,
    target: &[Vertex],
    remaining: &[Vertex],
    params: &ClassParams,
    cap: u64,
    nodes: &mut u64,
    seq: &mut Vec<Vertex>,
    out: &mut Vec<PseudoCover>,
) -> Result<()> {
    *nodes += 1;
    if *nodes > cap {
        return Err(Error::SearchAborted { nodes: *nodes, cap });
    }
    if remaining.len() as u64 <= params.nu() {
        out.push(PseudoCover {
            target: target.to_vec(),
            sequence: seq.clone(),
        });
    }
    let kappa = params.kappa() as usize;
    if seq.len() == kappa || remaining.is_empty() {
        return Ok(());
    }
    let counts = closed_counts(topo, remaining)?;
    let mut candidates: Vec<Vertex> = counts
        .into_iter()
        .filter(|&(_, c)| c as u64 >= params.mu() && c * kappa >= remaining.len())
        .map(|(z, _)| z)
        .collect();
    candidates.sort_unstable();
    for z in candidates {
        let rest = subtract_closed(topo, remaining, z)?;
        seq.push(z);
        enumerate_rec(topo, target, &rest, params, cap, nodes, seq, out)?;
        seq.pop();
    }
    Ok(())
}

/// Turns a small cover `Z` of a large set `W` into a pseudo-cover: order `Z`
/// greedily by remaining coverage and keep the longest admissible prefix.
pub fn pseudocover_from_cover<T: Topology>(
    topo: &T,
    w: &[Vertex],
    z: &[Vertex],
    params: &ClassParams,
) -> Result<PseudoCover> {
    let mut target = w.to_vec();
    target.sort_unstable();
    target.dedup();
    let kappa = params.kappa() as usize;
    if (target.len() as u64) < params.nu() {
        return Err(Error::Contract(format!("|W| = {} is below nu = {}", target.len(), params.nu())));
    }
    let mut pool = z.to_vec();
    pool.sort_unstable();
    pool.dedup();
    if pool.len() > kappa {
        return Err(Error::Contract(format!("|Z| = {} exceeds kappa = {kappa}", pool.len())));
    }
    let mut uncovered = target.clone();
    for &c in &pool {
        uncovered = subtract_closed(topo, &uncovered, c)?;
    }
    if !uncovered.is_empty() {
        return Err(Error::Contract("Z does not dominate W".into()));
    }

    let mut remaining = target.clone();
    let mut sequence = Vec::new();
    while !pool.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (idx, &c) in pool.iter().enumerate() {
            let gain = remaining.len() - subtract_closed(topo, &remaining, c)?.len();
            if best.map_or(true, |(_, g)| gain > g) {
                best = Some((idx, gain));
            }
        }
        let (idx, gain) = best.expect("pool is nonempty");
        if (gain as u64) < params.mu() || gain * kappa < remaining.len() {
            break;
        }
        let c = pool.remove(idx);
        remaining = subtract_closed(topo, &remaining, c)?;
        sequence.push(c);
    }
    if remaining.len() as u64 > params.nu() {
        return Err(Error::Internal(format!(
            "greedy prefix leaves {} > nu targets",
            remaining.len()
        )));
    }
    Ok(PseudoCover { target, sequence })
}

struct SequenceSearch<'b, 'a> {
    ball: &'b Ball<'a, NodeState>,
    params: &'b ClassParams,
    cap: u64,
    members: HashMap<Vertex, Vec<Vertex>>,
    endpoints: BTreeSet<Vertex>,
    too_long: Option<Vec<Vertex>>,
}

impl SequenceSearch<'_, '_> {
    fn residual(&self, v: Vertex) -> Result<&[Vertex]> {
        Ok(&self.ball.state(v)?.residual)
    }

    /// Vertices that occur in some pseudo-cover of `N_R(v)`; empty unless
    /// `|N_R(v)| > mu`.
    fn members(&mut self, v: Vertex) -> Result<Vec<Vertex>> {
        if let Some(m) = self.members.get(&v) {
            return Ok(m.clone());
        }
        let residual = self.residual(v)?.to_vec();
        let mut set = BTreeSet::new();
        if residual.len() as u64 > self.params.mu() {
            for cover in enumerate_pseudocovers(self.ball, &residual, self.params, self.cap)? {
                set.extend(cover.sequence);
            }
        }
        let list: Vec<Vertex> = set.into_iter().collect();
        self.members.insert(v, list.clone());
        Ok(list)
    }

    fn extend(&mut self, seq: &mut Vec<Vertex>, witness: &[Vertex]) -> Result<()> {
        let last = *seq.last().expect("sequences start at the center");
        let len = seq.len() as u64;
        if len >= self.params.s {
            // A sequence of length s spans a K_{s,t}.
            if self.too_long.is_none() {
                self.too_long = Some(seq.clone());
            }
            self.endpoints.insert(last);
            return Ok(());
        }
        let need = self.params.sequence_threshold(len + 1);
        let mut extended = false;
        for u in self.members(last)? {
            if seq.contains(&u) {
                continue;
            }
            let res = self.residual(u)?;
            let next: Vec<Vertex> = witness
                .iter()
                .copied()
                .filter(|x| res.binary_search(x).is_ok())
                .collect();
            if next.len() as u128 >= need {
                extended = true;
                seq.push(u);
                self.extend(seq, &next)?;
                seq.pop();
            }
        }
        if !extended {
            self.endpoints.insert(last);
        }
        Ok(())
    }
}

type SequenceResult = (Vec<Vertex>, Option<Vec<Vertex>>);

/// Phase 2 of the general algorithm: the endpoints of all maximal
/// domination sequences.
pub fn phase2(
    rt: &mut Runtime,
    g: &Graph,
    states: &mut [NodeState],
    params: &ClassParams,
    opts: Phase2Options,
) -> Result<PhaseOutput> {
    let radius = 2 * (params.s as usize - 1) + 2;
    let first = params.sequence_threshold(1);
    let results: Vec<SequenceResult> = rt.run_ball_phase("phase2", g, states, radius, |ball| {
        let v = ball.center();
        let residual = ball.state(v)?.residual.clone();
        if (residual.len() as u128) < first {
            return Ok((Vec::new(), None));
        }
        let mut search = SequenceSearch {
            ball,
            params,
            cap: opts.enumeration_cap,
            members: HashMap::new(),
            endpoints: BTreeSet::new(),
            too_long: None,
        };
        search.extend(&mut vec![v], &residual)?;
        Ok((search.endpoints.into_iter().collect(), search.too_long))
    })?;

    let mut out = PhaseOutput::default();
    let mut selected = BTreeSet::new();
    for (v, (endpoints, too_long)) in results.into_iter().enumerate() {
        selected.extend(endpoints);
        if let Some(seq) = too_long {
            let ids: Vec<_> = seq.iter().map(|&x| g.id(x)).collect();
            let msg = format!(
                "domination sequence {ids:?} of vertex {} reaches length s = {}",
                g.id(v),
                params.s
            );
            if opts.strict {
                return Err(Error::PromiseViolated(msg));
            }
            warn!("{msg}");
            out.warnings.push(msg);
        }
    }
    out.selected = selected.into_iter().collect();
    // Endpoints sit within distance two of the vertex that found them.
    rt.charge("phase2.notify", 2);
    rt.recolor_after_selection("phase2.recolor", g, states, &out.selected);

    let max = max_residual_degree(states) as u128;
    if max >= params.delta_r() {
        let msg = format!("residual degree {max} after phase 2 reaches bound {}", params.delta_r());
        if opts.strict {
            return Err(Error::PromiseViolated(msg));
        }
        warn!("{msg}");
        out.warnings.push(msg);
    }
    Ok(out)
}
