//! Whitehead graphs, forest tests relative to collapse classes, and the
//! (relative) Stallings test.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::presentation::{Letter, Presentation, SubPresentation};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn suffix(self) -> &'static str {
        match self {
            Polarity::Plus => "plus",
            Polarity::Minus => "minus",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Polarity::Plus => '+',
            Polarity::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WgVertex {
    pub generator: usize,
    pub polarity: Polarity,
}

impl WgVertex {
    pub const fn plus(generator: usize) -> Self {
        WgVertex { generator, polarity: Polarity::Plus }
    }

    pub const fn minus(generator: usize) -> Self {
        WgVertex { generator, polarity: Polarity::Minus }
    }

    /// Node index in [`WhiteheadGraph::to_multigraph`].
    pub fn index(self) -> usize {
        2 * self.generator + usize::from(self.polarity == Polarity::Minus)
    }

    pub fn name(self, generators: &[String]) -> String {
        format!("{}_{}", generators[self.generator], self.polarity.suffix())
    }

    /// The point where a path reading `l` leaves the generator's edge.
    pub fn exit(l: Letter) -> Self {
        if l.inverse {
            WgVertex::plus(l.generator)
        } else {
            WgVertex::minus(l.generator)
        }
    }

    /// The point where a path reading `l` enters the generator's edge.
    pub fn entry(l: Letter) -> Self {
        if l.inverse {
            WgVertex::minus(l.generator)
        } else {
            WgVertex::plus(l.generator)
        }
    }
}

/// A corner of a 2-cell: the Whitehead edge between consecutive letters at
/// positions `pos` and `pos + 1` (cyclically) of relator `relator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner {
    /// Sorted.
    pub ends: [WgVertex; 2],
    pub relator: usize,
    pub pos: usize,
}

impl Corner {
    pub fn new(a: WgVertex, b: WgVertex, relator: usize, pos: usize) -> Self {
        let ends = if a <= b { [a, b] } else { [b, a] };
        Corner { ends, relator, pos }
    }

    pub fn polarity(&self) -> Option<Polarity> {
        let [a, b] = self.ends;
        (a.polarity == b.polarity).then_some(a.polarity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteheadGraph {
    pub generators: Vec<String>,
    pub corners: Vec<Corner>,
}

/// The corner between positions `pos` and `pos + 1` of `word`.
pub fn corner_at(word: &[Letter], relator: usize, pos: usize) -> Corner {
    let u = word[pos];
    let v = word[(pos + 1) % word.len()];
    Corner::new(WgVertex::exit(u), WgVertex::entry(v), relator, pos)
}

pub fn whitehead_graph(p: &Presentation) -> Result<WhiteheadGraph> {
    let mut corners = Vec::new();
    for r in p.relators() {
        let w = r.word.letters();
        if w.is_empty() {
            return Err(Error::EmptyRelator(r.id));
        }
        corners.extend((0..w.len()).map(|k| corner_at(w, r.id, k)));
    }
    Ok(WhiteheadGraph { generators: p.generators().to_vec(), corners })
}

impl WhiteheadGraph {
    pub fn vertices(&self) -> Vec<WgVertex> {
        (0..self.generators.len())
            .flat_map(|g| [WgVertex::plus(g), WgVertex::minus(g)])
            .collect()
    }

    /// All `2n` vertices, indexed by [`WgVertex::index`].
    pub fn to_multigraph(&self) -> Multigraph {
        let edges = self
            .corners
            .iter()
            .map(|c| MultiEdge { ends: [c.ends[0].index(), c.ends[1].index()], relator: c.relator, pos: c.pos })
            .collect();
        Multigraph { nodes: 2 * self.generators.len(), edges }
    }

    /// The full subgraph on one polarity; node `g` is generator `g`.
    pub fn restrict(&self, polarity: Polarity) -> Multigraph {
        let edges = self
            .corners
            .iter()
            .filter(|c| c.polarity() == Some(polarity))
            .map(|c| MultiEdge { ends: [c.ends[0].generator, c.ends[1].generator], relator: c.relator, pos: c.pos })
            .collect();
        Multigraph { nodes: self.generators.len(), edges }
    }

    /// Corner multiset over vertex pairs, origins forgotten.
    pub fn corner_multiset(&self) -> Vec<[WgVertex; 2]> {
        let mut v: Vec<_> = self.corners.iter().map(|c| c.ends).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiEdge {
    pub ends: [usize; 2],
    pub relator: usize,
    pub pos: usize,
}

/// An undirected multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub nodes: usize,
    pub edges: Vec<MultiEdge>,
}

impl Multigraph {
    pub fn from_pairs(nodes: usize, pairs: &[[usize; 2]]) -> Self {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, &ends)| MultiEdge { ends, relator: k, pos: 0 })
            .collect();
        Multigraph { nodes, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForestWitness {
    /// Edge indices of a spanning forest.
    SpanningForest { edges: Vec<usize> },
    /// Edge indices of a closed cycle, in order; a loop is a 1-cycle.
    Cycle { edges: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCheck {
    pub forest: bool,
    pub connected: bool,
    pub components: usize,
    pub witness: ForestWitness,
}

impl ForestCheck {
    pub fn is_tree(&self) -> bool {
        self.forest && self.connected
    }
}

/// Union-find forest test; on failure the witness is the first cycle closed.
fn forest_check(nodes: usize, ends: &[[usize; 2]]) -> ForestCheck {
    let mut dsu = DisjointSets::new(nodes);
    let mut tree = Vec::new();
    let mut cycle = None;
    let mut components = nodes;
    for (k, &[a, b]) in ends.iter().enumerate() {
        if dsu.union(a, b) {
            tree.push(k);
            components -= 1;
        } else if cycle.is_none() {
            cycle = Some(close_cycle(nodes, ends, &tree, k));
        }
    }
    match cycle {
        Some(edges) => ForestCheck { forest: false, connected: components <= 1, components, witness: ForestWitness::Cycle { edges } },
        None => ForestCheck { forest: true, connected: components <= 1, components, witness: ForestWitness::SpanningForest { edges: tree } },
    }
}

/// Tree path from `b` to `a` of edge `k`, followed by `k`.
fn close_cycle(nodes: usize, ends: &[[usize; 2]], tree: &[usize], k: usize) -> Vec<usize> {
    let [a, b] = ends[k];
    if a == b {
        return vec![k];
    }
    let mut adj = vec![Vec::new(); nodes];
    for &t in tree {
        let [x, y] = ends[t];
        adj[x].push((y, t));
        adj[y].push((x, t));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
    let mut seen = vec![false; nodes];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        if x == a {
            break;
        }
        for &(y, t) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, t));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = a;
    while let Some((p, t)) = prev[x] {
        path.push(t);
        x = p;
    }
    // path runs a -> b; the cycle is b ... a then k back to b.
    path.reverse();
    path.push(k);
    path
}

pub fn is_forest(g: &Multigraph) -> ForestCheck {
    let ends: Vec<_> = g.edges.iter().map(|e| e.ends).collect();
    forest_check(g.nodes, &ends)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsedEdge {
    pub ends: [usize; 2],
    /// Index of the edge in the uncollapsed graph.
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsedGraph {
    /// Collapse classes in the given order, then the remaining vertices as
    /// singletons in index order.
    pub nodes: Vec<Vec<usize>>,
    pub edges: Vec<CollapsedEdge>,
}

/// Contracts each class to a node and drops edges inside a class. Empty
/// classes are ignored.
pub fn collapse_classes(g: &Multigraph, classes: &[Vec<usize>]) -> Result<CollapsedGraph> {
    let mut owner: Vec<Option<usize>> = vec![None; g.nodes];
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if class.is_empty() {
            continue;
        }
        let node = nodes.len();
        let mut members = Vec::new();
        for &v in class {
            if v >= g.nodes {
                return Err(Error::VertexOutOfRange(v));
            }
            match owner[v] {
                Some(o) if o != node => {
                    let j = classes.iter().position(|c| c.contains(&v)).unwrap_or(i);
                    return Err(Error::OverlappingClasses(j, i));
                }
                Some(_) => {}
                None => {
                    owner[v] = Some(node);
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        nodes.push(members);
    }
    let class_nodes = nodes.len();
    for (v, o) in owner.iter_mut().enumerate() {
        if o.is_none() {
            *o = Some(nodes.len());
            nodes.push(vec![v]);
        }
    }
    let node_of = |v: usize| owner[v].expect("every vertex has a node");
    let edges = g
        .edges
        .iter()
        .enumerate()
        .filter_map(|(k, e)| {
            let [a, b] = [node_of(e.ends[0]), node_of(e.ends[1])];
            (!(a == b && a < class_nodes)).then_some(CollapsedEdge { ends: [a, b], source: k })
        })
        .collect();
    Ok(CollapsedGraph { nodes, edges })
}

impl CollapsedGraph {
    /// Forest test on the collapsed graph; witness indices refer to the
    /// uncollapsed graph.
    pub fn forest_check(&self) -> ForestCheck {
        let ends: Vec<_> = self.edges.iter().map(|e| e.ends).collect();
        let mut check = forest_check(self.nodes.len(), &ends);
        let edges = match &mut check.witness {
            ForestWitness::SpanningForest { edges } | ForestWitness::Cycle { edges } => edges,
        };
        for k in edges.iter_mut() {
            *k = self.edges[*k].source;
        }
        check
    }
}

pub fn is_relative_forest(g: &Multigraph, classes: &[Vec<usize>]) -> Result<ForestCheck> {
    Ok(collapse_classes(g, classes)?.forest_check())
}

/// Relative forest whose collapsed graph is connected.
pub fn is_relative_tree(g: &Multigraph, classes: &[Vec<usize>]) -> Result<bool> {
    Ok(is_relative_forest(g, classes)?.is_tree())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StallingsReport {
    /// Every relator has total exponent sum zero.
    pub exponent_sums_ok: bool,
    pub side: Side,
    /// Witness for the passing side, or the positive side's cycle on failure.
    pub forest_witness: ForestWitness,
    pub plus: ForestCheck,
    pub minus: ForestCheck,
    pub verdict: Verdict,
}

impl StallingsReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn both_sides_trees(&self) -> bool {
        self.plus.is_tree() && self.minus.is_tree()
    }
}

pub fn stallings_test(p: &Presentation) -> Result<StallingsReport> {
    relative_stallings_test(p, &[])
}

/// Stallings test relative to full, generator-disjoint sub-presentations.
/// Each sub-presentation's generators form one collapse class per side.
pub fn relative_stallings_test(p: &Presentation, ts: &[SubPresentation]) -> Result<StallingsReport> {
    SubPresentation::validate_family(ts, p)?;
    let w = whitehead_graph(p)?;
    let classes: Vec<Vec<usize>> = ts.iter().map(|t| t.generators.clone()).collect();
    let plus = is_relative_forest(&w.restrict(Polarity::Plus), &classes)?;
    let minus = is_relative_forest(&w.restrict(Polarity::Minus), &classes)?;
    let exponent_sums_ok = p.exponent_sums().all_totals_zero;
    let side = if plus.forest {
        Side::Plus
    } else if minus.forest {
        Side::Minus
    } else {
        Side::None
    };
    let forest_witness = match side {
        Side::Minus => minus.witness.clone(),
        _ => plus.witness.clone(),
    };
    let verdict = if exponent_sums_ok && side != Side::None {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(StallingsReport { exponent_sums_ok, side, forest_witness, plus, minus, verdict })
}
