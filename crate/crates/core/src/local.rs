//! Round-synchronous simulation of the LOCAL model.
//!
//! A phase of radius `r` costs `r` rounds: every node gathers its radius-`r`
//! ball (messages are unbounded, so gathering is lossless) and decides from
//! that snapshot alone. Node programs only ever receive a [`Ball`], so any
//! attempt to read outside the view fails with
//! [`Error::LocalityViolation`]. All decisions of a phase are computed from
//! the same snapshot and applied together afterwards.

use std::borrow::Cow;
use std::cell::OnceCell;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Color {
    /// Not yet dominated.
    Red,
    /// Dominated, not selected.
    Yellow,
    /// Selected into the output.
    Green,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeState {
    pub color: Color,
    /// `N_R(v)`: neighbors that are still red.
    pub residual: Vec<Vertex>,
    pub scratch: BTreeMap<String, i64>,
}

impl NodeState {
    pub fn residual_degree(&self) -> usize {
        self.residual.len()
    }

    pub fn is_red(&self) -> bool {
        self.color == Color::Red
    }
}

/// All-red initial states.
pub fn initial_states(g: &Graph) -> Vec<NodeState> {
    g.vertices()
        .map(|v| NodeState {
            color: Color::Red,
            residual: g.neighbors(v).to_vec(),
            scratch: BTreeMap::new(),
        })
        .collect()
}

/// States in which exactly `red` is undominated; everything else is
/// yellow.
pub fn states_with_red(g: &Graph, red: &[Vertex]) -> Vec<NodeState> {
    let mut is_red = vec![false; g.n()];
    for &v in red {
        is_red[v] = true;
    }
    g.vertices()
        .map(|v| NodeState {
            color: if is_red[v] { Color::Red } else { Color::Yellow },
            residual: g.neighbors(v).iter().copied().filter(|&u| is_red[u]).collect(),
            scratch: BTreeMap::new(),
        })
        .collect()
}

pub fn red_vertices(states: &[NodeState]) -> Vec<Vertex> {
    states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_red())
        .map(|(v, _)| v)
        .collect()
}

pub fn green_vertices(states: &[NodeState]) -> Vec<Vertex> {
    states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.color == Color::Green)
        .map(|(v, _)| v)
        .collect()
}

pub fn max_residual_degree(states: &[NodeState]) -> usize {
    states.iter().map(NodeState::residual_degree).max().unwrap_or(0)
}

/// Read access to the part of the graph a node sees: the subgraph induced by
/// all vertices within distance `radius` of `center`, with their states.
pub struct Ball<'a, S> {
    graph: &'a Graph,
    states: &'a [S],
    center: Vertex,
    radius: usize,
    dist: OnceCell<HashMap<Vertex, usize>>,
}

impl<'a, S> Ball<'a, S> {
    pub fn new(graph: &'a Graph, states: &'a [S], center: Vertex, radius: usize) -> Self {
        Ball {
            graph,
            states,
            center,
            radius,
            dist: OnceCell::new(),
        }
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn distances(&self) -> &HashMap<Vertex, usize> {
        self.dist
            .get_or_init(|| self.graph.ball_distances(self.center, self.radius))
    }

    /// Distance from the center, `None` outside the ball.
    pub fn distance(&self, v: Vertex) -> Option<usize> {
        if v == self.center {
            return Some(0);
        }
        if self.radius >= 1 && v < self.graph.n() && self.graph.has_edge(self.center, v) {
            return Some(1);
        }
        if self.radius <= 1 {
            return None;
        }
        self.distances().get(&v).copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.distance(v).is_some()
    }

    fn violation(&self, v: Vertex) -> Error {
        Error::LocalityViolation {
            center: self.graph.id(self.center),
            vertex: if v < self.graph.n() { self.graph.id(v) } else { v as VertexId },
            radius: self.radius,
        }
    }

    pub fn state(&self, v: Vertex) -> Result<&'a S> {
        match self.distance(v) {
            Some(_) => Ok(&self.states[v]),
            None => Err(self.violation(v)),
        }
    }

    pub fn id(&self, v: Vertex) -> Result<VertexId> {
        match self.distance(v) {
            Some(_) => Ok(self.graph.id(v)),
            None => Err(self.violation(v)),
        }
    }

    /// Neighbors of `v` inside the ball (the induced view).
    pub fn neighbors(&self, v: Vertex) -> Result<Cow<'a, [Vertex]>> {
        let d = self.distance(v).ok_or_else(|| self.violation(v))?;
        let all = self.graph.neighbors(v);
        if d < self.radius {
            Ok(Cow::Borrowed(all))
        } else {
            Ok(Cow::Owned(all.iter().copied().filter(|&u| self.contains(u)).collect()))
        }
    }

    /// Every vertex of the ball, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.distances().keys().copied().collect();
        out.sort_unstable();
        out
    }
}

/// Anything that answers neighborhood queries: the whole graph (centralized
/// code and oracles) or a [`Ball`] (node programs).
pub trait Topology {
    fn neighbors_of(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>>;
}

impl Topology for Graph {
    fn neighbors_of(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        Ok(Cow::Borrowed(self.neighbors(v)))
    }
}

impl<S> Topology for Ball<'_, S> {
    fn neighbors_of(&self, v: Vertex) -> Result<Cow<'_, [Vertex]>> {
        self.neighbors(v)
    }
}

/// Per-phase round counts, in the order phases were first charged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub phases: Vec<(String, u64)>,
}

impl RoundTrace {
    pub fn charge(&mut self, phase: &str, rounds: u64) {
        match self.phases.iter_mut().find(|(name, _)| name == phase) {
            Some((_, r)) => *r += rounds,
            None => self.phases.push((phase.to_string(), rounds)),
        }
    }

    pub fn total(&self) -> u64 {
        self.phases.iter().map(|(_, r)| r).sum()
    }

    pub fn rounds_of(&self, phase: &str) -> u64 {
        self.phases
            .iter()
            .find(|(name, _)| name == phase)
            .map_or(0, |(_, r)| *r)
    }
}

/// Executes node programs and keeps the round ledger.
#[derive(Clone, Debug, Default)]
pub struct Runtime {
    pub parallel: bool,
    pub trace: RoundTrace,
}

impl Runtime {
    pub fn new(parallel: bool) -> Self {
        Runtime {
            parallel,
            trace: RoundTrace::default(),
        }
    }

    pub fn charge(&mut self, phase: &str, rounds: u64) {
        self.trace.charge(phase, rounds);
    }

    /// Runs `program` on the radius-`radius` ball of every vertex and returns
    /// the per-vertex results in vertex order. Charges `radius` rounds.
    pub fn run_ball_phase<S, U, F>(
        &mut self,
        phase: &str,
        g: &Graph,
        states: &[S],
        radius: usize,
        program: F,
    ) -> Result<Vec<U>>
    where
        S: Sync,
        U: Send,
        F: Fn(&Ball<'_, S>) -> Result<U> + Sync,
    {
        let out = self.map_vertices(g.n(), |v| program(&Ball::new(g, states, v, radius)))?;
        self.charge(phase, radius as u64);
        Ok(out)
    }

    /// One communication round in which every vertex sees exactly its own
    /// state and its neighbors' states. Cheaper than a radius-1
    /// [`Runtime::run_ball_phase`], same semantics.
    pub fn exchange<S, U, F>(&mut self, phase: &str, g: &Graph, states: &[S], program: F) -> Vec<U>
    where
        S: Sync,
        U: Send,
        F: Fn(Vertex, &S, &[Vertex], &[S]) -> U + Sync,
    {
        let out = self
            .map_vertices(g.n(), |v| Ok(program(v, &states[v], g.neighbors(v), states)))
            .expect("exchange programs are infallible");
        self.charge(phase, 1);
        out
    }

    fn map_vertices<U, F>(&self, n: usize, f: F) -> Result<Vec<U>>
    where
        U: Send,
        F: Fn(Vertex) -> Result<U> + Sync,
    {
        if self.parallel {
            (0..n).into_par_iter().map(&f).collect()
        } else {
            (0..n).map(f).collect()
        }
    }

    /// Marks `selected` green, their red neighbors yellow, and refreshes every
    /// residual neighborhood. Charges one round.
    pub fn recolor_after_selection(
        &mut self,
        phase: &str,
        g: &Graph,
        states: &mut [NodeState],
        selected: &[Vertex],
    ) {
        recolor(g, states, selected);
        self.charge(phase, 1);
    }
}

/// Uncharged recoloring; callers account for the round themselves.
pub(crate) fn recolor(g: &Graph, states: &mut [NodeState], selected: &[Vertex]) {
    if selected.is_empty() {
        return;
    }
    let mut is_selected = vec![false; g.n()];
    for &v in selected {
        is_selected[v] = true;
    }
    for v in g.vertices() {
        if is_selected[v] {
            states[v].color = Color::Green;
        } else if states[v].color == Color::Red && g.neighbors(v).iter().any(|&u| is_selected[u]) {
            states[v].color = Color::Yellow;
        }
    }
    // The residual set is a cache of the neighbors' colors, which any later
    // phase of radius >= 1 reads from its ball anyway.
    for v in g.vertices() {
        let residual: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| states[u].color == Color::Red)
            .collect();
        states[v].residual = residual;
    }
}
