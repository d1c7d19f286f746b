//! Simple undirected graphs with arbitrary integer vertex ids.

mod decompose;
pub mod generate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decompose::{
    decompose, decompose_with_matching, find_3plus_vertex, max_matching_deg2, Component,
    ComponentDecomposition, Matching, Reduction, Walk,
};

pub type VertexId = i64;

/// An unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Panics on loops; use [`Edge::try_new`] for untrusted input.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Self::try_new(u, v).expect("loop edge")
    }

    pub fn try_new(u: VertexId, v: VertexId) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge(u, v)),
            std::cmp::Ordering::Greater => Some(Edge(v, u)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> VertexId {
        self.0
    }

    pub fn hi(&self) -> VertexId {
        self.1
    }

    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.0, self.1]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.0 {
            Some(self.1)
        } else if v == self.1 {
            Some(self.0)
        } else {
            None
        }
    }

    /// Parses the `"u-v"` key used by the JSON documents. Negative ids are
    /// accepted (`"-3--1"`).
    pub fn parse_key(key: &str) -> Option<Self> {
        let bytes = key.as_bytes();
        let split = (1..bytes.len()).find(|&i| bytes[i] == b'-' && bytes[i - 1].is_ascii_digit())?;
        let u = key[..split].trim().parse().ok()?;
        let v = key[split + 1..].trim().parse().ok()?;
        Edge::try_new(u, v)
    }
}

impl From<Edge> for String {
    fn from(e: Edge) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Edge {
    type Error = String;

    fn try_from(key: String) -> std::result::Result<Self, String> {
        Edge::parse_key(&key).ok_or_else(|| format!("invalid edge key {key:?}"))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A simple graph. Vertices with no incident edge are kept, since they
/// count towards `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(mut self, vertices: I) -> Self {
        for v in vertices {
            self.add_vertex(v);
        }
        self
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adjacency.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<Edge> {
        let e = Edge::try_new(u, v).ok_or_else(|| Error::Validation(format!("loop at vertex {u}")))?;
        if !self.edges.insert(e) {
            return Err(Error::Validation(format!("duplicate edge {e}")));
        }
        self.adjacency.entry(u).or_default().insert(v);
        self.adjacency.entry(v).or_default().insert(u);
        Ok(e)
    }

    /// Vertex count, isolated vertices included.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Neighbors in ascending id order. Empty for unknown vertices.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        self.neighbors(v).map(move |u| Edge::new(u, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.degree(v) == 0
    }

    /// The other endpoint when `v` lies in a `K2` component.
    pub fn k2_partner(&self, v: VertexId) -> Option<VertexId> {
        let mut nbrs = self.neighbors(v);
        let u = nbrs.next()?;
        if nbrs.next().is_some() || self.degree(u) != 1 {
            return None;
        }
        Some(u)
    }

    /// Same vertex set, with the given edges removed.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut g = self.clone();
        for e in removed {
            if g.edges.remove(e) {
                let [u, v] = e.endpoints();
                g.adjacency.get_mut(&u).map(|s| s.remove(&v));
                g.adjacency.get_mut(&v).map(|s| s.remove(&u));
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Parses the edge-list format: one `u v` pair per line, `vertex u`
    /// lines for vertices without edges, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_id = |tok: &str| -> Result<VertexId> {
                tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid vertex id {tok:?}"),
                })
            };
            match tokens.as_slice() {
                ["vertex", v] => g.add_vertex(parse_id(v)?),
                [u, v] => {
                    let (u, v) = (parse_id(u)?, parse_id(v)?);
                    g.add_edge(u, v).map_err(|e| match e {
                        Error::Validation(msg) => Error::Validation(format!("line {line_no}: {msg}")),
                        other => other,
                    })?;
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected \"u v\" or \"vertex u\", found {line:?}"),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Canonical edge-list text: isolated vertices first, then edges sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices().filter(|&v| self.is_isolated(v)) {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}
