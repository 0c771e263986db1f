//! Labeled oriented graphs and trees.
//!
//! A [`Log`] stores its vertices by name in declaration order and its edges
//! in insertion order. Every other ordering in the crate derives from these
//! two, so all operations are deterministic.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::{Error, Result};

/// An oriented edge `[from, label, to]`, stored as vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub label: usize,
    pub to: usize,
}

impl Edge {
    pub const fn new(from: usize, label: usize, to: usize) -> Self {
        Edge { from, label, to }
    }

    pub fn reversed(self) -> Self {
        Edge { from: self.to, label: self.label, to: self.from }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.from == v || self.to == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if self.from == v {
            Some(self.to)
        } else if self.to == v {
            Some(self.from)
        } else {
            None
        }
    }
}

/// Vertex ids are nonempty strings over `[A-Za-z0-9_]`.
pub fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A labeled oriented graph: every oriented edge carries a vertex as label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Log {
    names: Vec<String>,
    edges: Vec<Edge>,
}

impl Log {
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            if !is_token(name) {
                return Err(Error::InvalidToken(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        for e in &edges {
            for v in [e.from, e.label, e.to] {
                if v >= names.len() {
                    return Err(Error::VertexOutOfRange(v));
                }
            }
        }
        Ok(Log { names, edges })
    }

    /// Builds a graph from vertex names and `[from, label, to]` name triples.
    pub fn from_names(vertices: &[&str], edges: &[[&str; 3]]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        };
        let edges = edges
            .iter()
            .map(|[f, l, t]| Ok(Edge::new(lookup(f)?, lookup(l)?, lookup(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Log::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<Edge> {
        self.edges.get(id).copied().ok_or(Error::UnknownEdge(id))
    }

    /// `[from,label,to]` with vertex names.
    pub fn edge_names(&self, id: usize) -> [&str; 3] {
        let e = self.edges[id];
        [self.name(e.from), self.name(e.label), self.name(e.to)]
    }

    pub fn describe_edge(&self, id: usize) -> String {
        let [f, l, t] = self.edge_names(id);
        format!("[{f},{l},{t}]")
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.from == v) + usize::from(e.to == v))
            .sum()
    }

    /// Ids of edges with `v` as an endpoint, in id order.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.touches(v))
            .map(|(i, _)| i)
    }

    /// Number of edges labeled by `v`.
    pub fn label_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.label == v).count()
    }

    pub fn tree_check(&self) -> core::result::Result<(), TreeDefect> {
        if self.names.is_empty() {
            return Err(TreeDefect::Empty);
        }
        let mut sets = DisjointSets::new(self.names.len());
        let mut components = self.names.len();
        for e in &self.edges {
            if !sets.union(e.from, e.to) {
                return Err(TreeDefect::Cycle);
            }
            components -= 1;
        }
        if components > 1 {
            return Err(TreeDefect::Disconnected);
        }
        Ok(())
    }

    pub fn is_lot(&self) -> bool {
        self.tree_check().is_ok()
    }

    /// Each vertex labels at most one edge.
    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.names.len()];
        self.edges.iter().all(|e| !core::mem::replace(&mut seen[e.label], true))
    }

    /// No edge is labeled by one of its own endpoints.
    pub fn is_compressed(&self) -> bool {
        self.first_uncompressed().is_none()
    }

    pub fn first_uncompressed(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.label == e.from || e.label == e.to)
    }

    /// First foldable pair `(e1, e2)`, `e1 < e2`: same label, and both point
    /// into or both point out of a common vertex.
    pub fn first_fold(&self) -> Option<(usize, usize)> {
        for (i, a) in self.edges.iter().enumerate() {
            for (j, b) in self.edges.iter().enumerate().skip(i + 1) {
                if foldable(a, b) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_interior_reducible(&self) -> bool {
        self.first_fold().is_some()
    }

    /// Reduction predicates. Boundary reducedness is only defined for trees.
    pub fn predicates(&self) -> Result<Predicates> {
        self.tree_check().map_err(Error::NotATree)?;
        let lot = Lot(self.clone());
        Ok(lot.predicates())
    }
}

pub(crate) fn foldable(a: &Edge, b: &Edge) -> bool {
    a.label == b.label
        && ((a.to == b.to && a.from != b.from) || (a.from == b.from && a.to != b.to))
}

/// Why a [`Log`] fails to be a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeDefect {
    Empty,
    Cycle,
    Disconnected,
}

impl fmt::Display for TreeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeDefect::Empty => "empty",
            TreeDefect::Cycle => "cycle",
            TreeDefect::Disconnected => "disconnected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub injective: bool,
    pub compressed: bool,
    pub boundary_reduced: bool,
    pub interior_reduced: bool,
    pub reduced: bool,
}

/// A labeled oriented graph whose underlying graph is a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lot(Log);

impl Lot {
    pub fn new(log: Log) -> Result<Self> {
        log.tree_check().map_err(Error::NotATree)?;
        Ok(Lot(log))
    }

    pub fn from_names(vertices: &[&str], edges: &[[&str; 3]]) -> Result<Self> {
        Lot::new(Log::from_names(vertices, edges)?)
    }

    pub fn single_vertex(name: &str) -> Result<Self> {
        Lot::new(Log::new(alloc::vec![name.to_string()], Vec::new())?)
    }

    pub(crate) fn new_unchecked(log: Log) -> Self {
        debug_assert!(log.is_lot(), "not a tree");
        Lot(log)
    }

    pub fn as_log(&self) -> &Log {
        &self.0
    }

    pub fn into_log(self) -> Log {
        self.0
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.valency(v) == 1
    }

    /// Endpoint of edge `id` that is a boundary vertex and labels no edge,
    /// checking `from` before `to`.
    pub fn boundary_endpoint(&self, id: usize) -> Option<usize> {
        let e = self.edges[id];
        [e.from, e.to]
            .into_iter()
            .find(|&v| self.is_boundary(v) && self.label_count(v) == 0)
    }

    /// First edge admitting a boundary reduction, with the vertex it removes.
    pub fn first_boundary_reduction(&self) -> Option<(usize, usize)> {
        (0..self.edge_count()).find_map(|id| self.boundary_endpoint(id).map(|v| (id, v)))
    }

    pub fn is_boundary_reduced(&self) -> bool {
        self.first_boundary_reduction().is_none()
    }

    pub fn predicates(&self) -> Predicates {
        let injective = self.is_injective();
        let compressed = self.is_compressed();
        let boundary_reduced = self.is_boundary_reduced();
        let interior_reduced = !self.is_interior_reducible();
        Predicates {
            injective,
            compressed,
            boundary_reduced,
            interior_reduced,
            reduced: compressed && boundary_reduced && interior_reduced,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.predicates().reduced
    }
}

impl Deref for Lot {
    type Target = Log;

    fn deref(&self) -> &Log {
        &self.0
    }
}

impl TryFrom<Log> for Lot {
    type Error = Error;

    fn try_from(log: Log) -> Result<Self> {
        Lot::new(log)
    }
}
