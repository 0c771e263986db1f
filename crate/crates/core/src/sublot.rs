//! Sub-LOTs: connected, label-closed subtrees with at least one edge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::lot::{Edge, Log, Lot};
use crate::presentation::SubPresentation;
use crate::{Error, Result};

/// A sub-LOT of some parent [`Lot`], recorded by its edge ids (sorted) and
/// the names of the vertices those edges span (in the parent's order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubLot {
    pub edges: Vec<usize>,
    pub vertices: Vec<String>,
}

impl SubLot {
    /// Validates `edges` as a sub-LOT of `lot`.
    pub fn new(lot: &Lot, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let edges: Vec<usize> = edges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if edges.is_empty() {
            return Err(Error::InvalidSubLot("no edges".into()));
        }
        for &id in &edges {
            lot.edge(id)?;
        }
        let span = spanned(lot, &edges);
        if !connected(lot, &edges, &span) {
            return Err(Error::InvalidSubLot("not connected".into()));
        }
        if let Some(&id) = edges.iter().find(|&&id| !span[lot.edges()[id].label]) {
            return Err(Error::InvalidSubLot(format!(
                "label of edge {} is outside the subgraph",
                lot.describe_edge(id)
            )));
        }
        let vertices = (0..lot.vertex_count())
            .filter(|&v| span[v])
            .map(|v| lot.name(v).to_string())
            .collect();
        Ok(SubLot { edges, vertices })
    }

    /// The sub-LOT whose edges are given as `[from, label, to]` name triples.
    pub fn from_edge_names(lot: &Lot, triples: &[[String; 3]]) -> Result<Self> {
        let ids = triples
            .iter()
            .map(|t| {
                (0..lot.edge_count())
                    .find(|&id| lot.edge_names(id) == [t[0].as_str(), t[1].as_str(), t[2].as_str()])
                    .ok_or_else(|| Error::InvalidSubLot(format!("no edge [{},{},{}]", t[0], t[1], t[2])))
            })
            .collect::<Result<Vec<_>>>()?;
        SubLot::new(lot, ids)
    }

    /// Re-checks this sub-LOT against `lot`, including the recorded vertex list.
    pub fn validate(&self, lot: &Lot) -> Result<()> {
        let fresh = SubLot::new(lot, self.edges.iter().copied())?;
        if fresh != *self {
            return Err(Error::InvalidSubLot("edge ids are unsorted or vertex list is wrong".into()));
        }
        Ok(())
    }

    pub fn vertex_indices(&self, lot: &Log) -> Vec<usize> {
        self.vertices.iter().filter_map(|n| lot.index_of(n)).collect()
    }

    pub fn edge_triples(&self, lot: &Log) -> Vec<[String; 3]> {
        self.edges
            .iter()
            .map(|&id| lot.edge_names(id).map(|s| s.to_string()))
            .collect()
    }

    pub fn is_proper(&self, lot: &Log) -> bool {
        self.edges.len() < lot.edge_count()
    }

    pub fn contains(&self, other: &SubLot) -> bool {
        other.edges.iter().all(|e| self.edges.binary_search(e).is_ok())
    }

    pub fn shares_vertex(&self, other: &SubLot) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }

    /// Edge ids common to both.
    pub fn edge_intersection(&self, other: &SubLot) -> Vec<usize> {
        self.edges.iter().copied().filter(|e| other.edges.binary_search(e).is_ok()).collect()
    }

    /// The sub-LOT as a standalone LOT: vertices keep the parent's order,
    /// edge `k` of the result is parent edge `self.edges[k]`.
    pub fn to_lot(&self, lot: &Lot) -> Lot {
        let idx = self.vertex_indices(lot);
        let mut new_index = alloc::vec![usize::MAX; lot.vertex_count()];
        for (k, &v) in idx.iter().enumerate() {
            new_index[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .map(|&id| {
                let e = lot.edges()[id];
                Edge::new(new_index[e.from], new_index[e.label], new_index[e.to])
            })
            .collect();
        let log = Log::new(self.vertices.clone(), edges).expect("sub-LOT names are valid");
        Lot::new_unchecked(log)
    }

    /// The full sub-presentation of `P(lot)` carried by this sub-LOT.
    pub fn sub_presentation(&self, lot: &Log) -> SubPresentation {
        SubPresentation { generators: self.vertex_indices(lot), relators: self.edges.clone() }
    }
}

fn spanned(lot: &Log, edges: &[usize]) -> Vec<bool> {
    let mut span = alloc::vec![false; lot.vertex_count()];
    for &id in edges {
        let e = lot.edges()[id];
        span[e.from] = true;
        span[e.to] = true;
    }
    span
}

fn connected(lot: &Log, edges: &[usize], span: &[bool]) -> bool {
    let mut sets = DisjointSets::new(lot.vertex_count());
    let mut components = span.iter().filter(|&&b| b).count();
    for &id in edges {
        let e = lot.edges()[id];
        if sets.union(e.from, e.to) {
            components -= 1;
        }
    }
    components == 1
}

fn label_closed(lot: &Log, edges: &[usize]) -> bool {
    let span = spanned(lot, edges);
    edges.iter().all(|&id| span[lot.edges()[id].label])
}

/// Every sub-LOT of `t`, the whole tree included, sorted by edge list.
///
/// Connected edge sets are grown from each seed edge using only edges with a
/// larger id, branching on include/exclude of each frontier edge so every set
/// is produced once. The count is exponential in the worst case.
pub fn enumerate_sublots(t: &Lot) -> Vec<SubLot> {
    let m = t.edge_count();
    let mut found = Vec::new();
    let mut in_set = alloc::vec![false; m];
    let mut banned = alloc::vec![false; m];
    for seed in 0..m {
        in_set[seed] = true;
        let frontier = extend_frontier(t, seed, seed, &in_set, &banned, &[]);
        grow(t, seed, &mut in_set, &mut banned, frontier, &mut found);
        in_set[seed] = false;
    }
    let mut subs: Vec<SubLot> = found
        .into_iter()
        .filter(|edges: &Vec<usize>| label_closed(t, edges))
        .map(|edges| SubLot::new(t, edges).expect("enumerated sets are sub-LOTs"))
        .collect();
    subs.sort();
    subs
}

fn extend_frontier(
    t: &Lot,
    seed: usize,
    added: usize,
    in_set: &[bool],
    banned: &[bool],
    frontier: &[usize],
) -> Vec<usize> {
    let e = t.edges()[added];
    let mut out = frontier.to_vec();
    for v in [e.from, e.to] {
        for id in t.incident(v) {
            if id > seed && !in_set[id] && !banned[id] && !out.contains(&id) {
                out.push(id);
            }
        }
    }
    out
}

fn grow(
    t: &Lot,
    seed: usize,
    in_set: &mut Vec<bool>,
    banned: &mut Vec<bool>,
    frontier: Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some((&next, rest)) = frontier.split_first() else {
        found.push((0..in_set.len()).filter(|&i| in_set[i]).collect());
        return;
    };
    in_set[next] = true;
    let with = extend_frontier(t, seed, next, in_set, banned, rest);
    grow(t, seed, in_set, banned, with, found);
    in_set[next] = false;

    banned[next] = true;
    grow(t, seed, in_set, banned, rest.to_vec(), found);
    banned[next] = false;
}

/// Proper sub-LOTs not contained in any other proper sub-LOT.
pub fn maximal_proper_sublots(t: &Lot) -> Vec<SubLot> {
    maximal_among(t, enumerate_sublots(t))
}

pub(crate) fn maximal_among(t: &Lot, all: Vec<SubLot>) -> Vec<SubLot> {
    let proper: Vec<SubLot> = all.into_iter().filter(|s| s.is_proper(t)).collect();
    proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|o| o.edges.len() > s.edges.len() && o.contains(s))
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseClass {
    pub sublot: SubLot,
    pub representative: String,
}

/// How a LOT maps onto its collapse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseMap {
    pub classes: Vec<CollapseClass>,
    /// Old vertex name to new vertex name, for every vertex.
    pub vertex_map: BTreeMap<String, String>,
    /// Old edge id to new edge id; `None` for edges inside a class.
    pub edge_map: Vec<Option<usize>>,
}

/// Checks that `ts` are valid sub-LOTs of `t` with pairwise disjoint vertex sets.
pub fn check_disjoint(t: &Lot, ts: &[SubLot]) -> Result<()> {
    for (i, s) in ts.iter().enumerate() {
        s.validate(t)?;
        for (j, o) in ts.iter().enumerate().take(i) {
            if s.shares_vertex(o) {
                return Err(Error::OverlappingSubLots(j, i));
            }
        }
    }
    Ok(())
}

/// Contracts each sub-LOT to its lexicographically smallest vertex and
/// rewrites every label inside it to that vertex.
pub fn collapse_sublots(t: &Lot, ts: &[SubLot]) -> Result<(Lot, CollapseMap)> {
    check_disjoint(t, ts)?;
    let n = t.vertex_count();
    let mut target: Vec<usize> = (0..n).collect();
    let mut classes = Vec::with_capacity(ts.len());
    let mut inside_edge = alloc::vec![false; t.edge_count()];
    for s in ts {
        let members = s.vertex_indices(t);
        let rep = *members
            .iter()
            .min_by(|&&a, &&b| t.name(a).cmp(t.name(b)))
            .expect("sub-LOTs have vertices");
        for &v in &members {
            target[v] = rep;
        }
        for &id in &s.edges {
            inside_edge[id] = true;
        }
        classes.push(CollapseClass { sublot: s.clone(), representative: t.name(rep).to_string() });
    }
    let mut new_index = alloc::vec![usize::MAX; n];
    let mut names = Vec::new();
    for v in 0..n {
        if target[v] == v {
            new_index[v] = names.len();
            names.push(t.name(v).to_string());
        }
    }
    let remap = |v: usize| new_index[target[v]];
    let mut edges = Vec::new();
    let mut edge_map = Vec::with_capacity(t.edge_count());
    for (id, e) in t.edges().iter().enumerate() {
        if inside_edge[id] {
            edge_map.push(None);
        } else {
            edge_map.push(Some(edges.len()));
            edges.push(Edge::new(remap(e.from), remap(e.label), remap(e.to)));
        }
    }
    let vertex_map = (0..n)
        .map(|v| (t.name(v).to_string(), t.name(target[v]).to_string()))
        .collect();
    let log = Log::new(names, edges).expect("collapse keeps names valid");
    Ok((Lot::new_unchecked(log), CollapseMap { classes, vertex_map, edge_map }))
}

/// Whether the collapse of `t` along `ts` is injective.
pub fn is_relatively_injective(t: &Lot, ts: &[SubLot]) -> Result<bool> {
    Ok(collapse_sublots(t, ts)?.0.is_injective())
}
