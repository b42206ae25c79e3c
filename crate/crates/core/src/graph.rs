//! Undirected simple graphs with stable integer ids, plus the edge-list and
//! JSON interchange formats.
//!
//! Internally vertices are dense indices `0..n` assigned in increasing id
//! order, so "smaller index" and "smaller id" coincide and every tie-break in
//! the crate can work on indices directly.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index into a [`Graph`].
pub type Vertex = usize;
/// External vertex identifier (the LOCAL-model unique id).
pub type VertexId = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<Vec<Vertex>>,
    index: HashMap<VertexId, Vertex>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on the given ids. Duplicate edges collapse; self-loops
    /// and unknown endpoints are rejected.
    pub fn from_id_edges(
        ids: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let set: BTreeSet<VertexId> = ids.into_iter().collect();
        let ids: Vec<VertexId> = set.into_iter().collect();
        let index: HashMap<VertexId, Vertex> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on {a}")));
            }
            let (&u, &v) = match (index.get(&a), index.get(&b)) {
                (Some(u), Some(v)) => (u, v),
                _ => return Err(Error::InvalidGraph(format!("edge {a}-{b} has unknown endpoint"))),
            };
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            ids,
            adj,
            index,
            edge_count: edge_count / 2,
        })
    }

    /// Graph on ids `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_id_edges(
            0..n as VertexId,
            edges.into_iter().map(|(u, v)| (u as VertexId, v as VertexId)),
        )
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn id(&self, v: Vertex) -> VertexId {
        self.ids[v]
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, id: VertexId) -> Option<Vertex> {
        self.index.get(&id).copied()
    }

    /// Closed neighborhood `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        let mut placed = false;
        for &u in &self.adj[v] {
            if !placed && u > v {
                out.push(v);
                placed = true;
            }
            out.push(u);
        }
        if !placed {
            out.push(v);
        }
        out
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep`, which keeps the original ids.
    /// Returns the subgraph and, for each new index, the old index.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep: Vec<Vertex> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let ids: Vec<VertexId> = keep.iter().map(|&v| self.ids[v]).collect();
        let mut adj = vec![Vec::new(); keep.len()];
        let mut edge_count = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                if new_index[u] != usize::MAX {
                    adj[i].push(new_index[u]);
                    edge_count += 1;
                }
            }
        }
        let index = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        (
            Graph {
                ids,
                adj,
                index,
                edge_count: edge_count / 2,
            },
            keep,
        )
    }

    /// True iff `set` dominates `targets`, i.e. `targets ⊆ N[set]`.
    pub fn dominates(&self, set: &[Vertex], targets: impl IntoIterator<Item = Vertex>) -> bool {
        let covered = self.covered_by(set);
        targets.into_iter().all(|v| covered[v])
    }

    pub fn is_dominating_set(&self, set: &[Vertex]) -> bool {
        self.dominates(set, self.vertices())
    }

    /// Indicator vector of `N[set]`.
    pub fn covered_by(&self, set: &[Vertex]) -> Vec<bool> {
        let mut covered = vec![false; self.n()];
        for &v in set {
            covered[v] = true;
            for &u in &self.adj[v] {
                covered[u] = true;
            }
        }
        covered
    }

    /// Vertices at distance at most `radius` from `center`, with distances.
    pub fn ball_distances(&self, center: Vertex, radius: usize) -> HashMap<Vertex, usize> {
        let mut dist = HashMap::new();
        dist.insert(center, 0);
        let mut frontier = vec![center];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in &self.adj[v] {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                        e.insert(d);
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        dist
    }

    /// Reads the edge-list format: `u v` per line, `# ...` comments, and
    /// `v <id>` lines declaring (possibly isolated) vertices.
    pub fn read_edge_list(reader: impl BufRead) -> Result<Self> {
        let mut ids = BTreeSet::new();
        let mut edges = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parse = |s: &str| -> Result<VertexId> {
                s.parse::<VertexId>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a non-negative integer, found {s:?}"),
                })
            };
            match fields.as_slice() {
                ["v", id] => {
                    ids.insert(parse(id)?);
                }
                [a, b] => {
                    let (a, b) = (parse(a)?, parse(b)?);
                    if a == b {
                        return Err(Error::SelfLoop {
                            line: line_no,
                            vertex: a,
                        });
                    }
                    ids.insert(a);
                    ids.insert(b);
                    edges.push((a, b));
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected `u v` or `v <id>`, found {trimmed:?}"),
                    })
                }
            }
        }
        Self::from_id_edges(ids, edges)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn write_edge_list(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# n={} m={}", self.n(), self.m())?;
        for v in self.vertices() {
            if self.degree(v) == 0 {
                writeln!(out, "v {}", self.id(v))?;
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.id(u), self.id(v))?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }

    pub fn to_json(&self) -> GraphJson {
        let dense = self.ids.iter().enumerate().all(|(i, &id)| id == i as VertexId);
        GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [self.id(u), self.id(v)]).collect(),
            vertices: if dense { None } else { Some(self.ids.clone()) },
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let ids: Vec<VertexId> = match &json.vertices {
            Some(ids) => ids.clone(),
            None => (0..json.n as VertexId).collect(),
        };
        if ids.len() != json.n {
            return Err(Error::InvalidGraph(format!(
                "\"n\" is {} but {} vertices were listed",
                json.n,
                ids.len()
            )));
        }
        Self::from_id_edges(ids, json.edges.iter().map(|e| (e[0], e[1])))
    }
}

/// JSON form `{"n": …, "edges": [[u, v], …]}`. Vertex ids are `0..n` unless
/// an explicit `"vertices"` list is present.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexId>>,
}
