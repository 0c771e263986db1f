//! Combinatorial spherical diagrams over a presentation.
//!
//! A diagram is a connected oriented graph with labeled edges, a list of
//! faces given by closed boundary walks, and a rotation system. At a vertex
//! the rotation lists the incident edge-ends so that each entry is followed
//! by the end through which a face walk leaves after arriving through that
//! entry.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::presentation::{Letter, Presentation, SubPresentation, Word};
use crate::whitehead::{corner_at, Corner};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Along,
    Against,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub label: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub edge: usize,
    pub direction: Direction,
}

impl Step {
    pub fn along(edge: usize) -> Self {
        Step { edge, direction: Direction::Along }
    }

    pub fn against(edge: usize) -> Self {
        Step { edge, direction: Direction::Against }
    }

    fn start(self, e: &DiagramEdge) -> usize {
        match self.direction {
            Direction::Along => e.tail,
            Direction::Against => e.head,
        }
    }

    fn finish(self, e: &DiagramEdge) -> usize {
        match self.direction {
            Direction::Along => e.head,
            Direction::Against => e.tail,
        }
    }

    fn arriving(self) -> EdgeEnd {
        let end = match self.direction {
            Direction::Along => End::Head,
            Direction::Against => End::Tail,
        };
        EdgeEnd { edge: self.edge, end }
    }

    fn leaving(self) -> EdgeEnd {
        let end = match self.direction {
            Direction::Along => End::Tail,
            Direction::Against => End::Head,
        };
        EdgeEnd { edge: self.edge, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalDiagram {
    pub vertices: Vec<String>,
    pub edges: Vec<DiagramEdge>,
    /// Closed boundary walks.
    pub faces: Vec<Vec<Step>>,
    pub rotation: Vec<Vec<EdgeEnd>>,
}

/// How a face word sits in the presentation: `word = rotate(r^epsilon, shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceMatch {
    pub relator: usize,
    pub epsilon: i8,
    pub shift: usize,
}

impl FaceMatch {
    /// Relator position of the corner after step `k` of the face.
    pub fn relator_pos(&self, k: usize, n: usize) -> usize {
        if self.epsilon > 0 {
            (k + self.shift) % n
        } else {
            (2 * n - 2 - (k + self.shift) % n) % n
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub violations: Vec<String>,
    pub euler_characteristic: i64,
    pub face_matches: Vec<Option<FaceMatch>>,
}

impl DiagramReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SphericalDiagram {
    /// Builds the diagram with the rotation system implied by the faces.
    pub fn from_faces(vertices: Vec<String>, edges: Vec<DiagramEdge>, faces: Vec<Vec<Step>>) -> Result<Self> {
        let mut d = SphericalDiagram { rotation: vec![Vec::new(); vertices.len()], vertices, edges, faces };
        for s in d.faces.iter().flatten() {
            if s.edge >= d.edges.len() {
                return Err(Error::InvalidDiagram(format!("unknown edge {}", s.edge)));
            }
        }
        let next = d.successors();
        for v in 0..d.vertices.len() {
            let ends = d.ends_at(v);
            let Some(&first) = ends.first() else { continue };
            let mut cycle = vec![first];
            let mut cur = first;
            while let Some(&(_, n)) = next.iter().find(|(a, _)| *a == cur) {
                if n == first {
                    break;
                }
                if cycle.contains(&n) || cycle.len() > ends.len() {
                    return Err(Error::InvalidDiagram(format!("face corners at vertex {} do not close up", d.vertices[v])));
                }
                cycle.push(n);
                cur = n;
            }
            d.rotation[v] = cycle;
        }
        Ok(d)
    }

    pub fn edge_end_vertex(&self, e: EdgeEnd) -> usize {
        let edge = &self.edges[e.edge];
        match e.end {
            End::Tail => edge.tail,
            End::Head => edge.head,
        }
    }

    /// Edge-ends at `v`, in edge order.
    fn ends_at(&self, v: usize) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.tail == v {
                out.push(EdgeEnd { edge: id, end: End::Tail });
            }
            if e.head == v {
                out.push(EdgeEnd { edge: id, end: End::Head });
            }
        }
        out
    }

    /// (arriving end, leaving end) for every face corner.
    fn successors(&self) -> Vec<(EdgeEnd, EdgeEnd)> {
        let mut out = Vec::new();
        for f in &self.faces {
            for k in 0..f.len() {
                out.push((f[k].arriving(), f[(k + 1) % f.len()].leaving()));
            }
        }
        out
    }

    pub fn valency(&self, v: usize) -> usize {
        self.ends_at(v).len()
    }

    pub fn face_word(&self, face: usize, p: &Presentation) -> Option<Word> {
        self.faces[face]
            .iter()
            .map(|s| {
                let g = p.generator_index(&self.edges[s.edge].label)?;
                Some(Letter { generator: g, inverse: s.direction == Direction::Against })
            })
            .collect()
    }

    pub fn validate(&self, p: &Presentation) -> DiagramReport {
        let mut violations = Vec::new();
        let nv = self.vertices.len();
        for (id, e) in self.edges.iter().enumerate() {
            if e.tail >= nv || e.head >= nv {
                violations.push(format!("edge {id}: endpoint out of range"));
            }
            if p.generator_index(&e.label).is_none() {
                violations.push(format!("edge {id}: unknown label {}", e.label));
            }
        }
        let euler = nv as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        if !violations.is_empty() {
            return DiagramReport { violations, euler_characteristic: euler, face_matches: vec![None; self.faces.len()] };
        }
        let mut uses = vec![(0usize, 0usize); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            if f.is_empty() {
                violations.push(format!("face {fi}: empty boundary"));
                continue;
            }
            for (k, s) in f.iter().enumerate() {
                let Some(e) = self.edges.get(s.edge) else {
                    violations.push(format!("face {fi}: unknown edge {}", s.edge));
                    continue;
                };
                match s.direction {
                    Direction::Along => uses[s.edge].0 += 1,
                    Direction::Against => uses[s.edge].1 += 1,
                }
                let n = f[(k + 1) % f.len()];
                if let Some(ne) = self.edges.get(n.edge) {
                    if s.finish(e) != n.start(ne) {
                        violations.push(format!("face {fi}: boundary not closed after step {k}"));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return DiagramReport { violations, euler_characteristic: euler, face_matches: vec![None; self.faces.len()] };
        }
        for (id, &(a, b)) in uses.iter().enumerate() {
            if (a, b) != (1, 1) {
                violations.push(format!("edge pairing: edge {id} used {a} times along and {b} times against"));
            }
        }
        if euler != 2 {
            violations.push(format!("euler characteristic {euler}, expected 2"));
        }
        let mut dsu = DisjointSets::new(nv);
        let mut comps = nv;
        for e in &self.edges {
            if dsu.union(e.tail, e.head) {
                comps -= 1;
            }
        }
        if comps > 1 {
            violations.push(format!("1-skeleton has {comps} components"));
        }
        if violations.is_empty() {
            self.check_rotation(&mut violations);
        }
        let face_matches: Vec<Option<FaceMatch>> = (0..self.faces.len())
            .map(|fi| {
                let m = self.face_word(fi, p).and_then(|w| match_word(&w, p));
                if m.is_none() {
                    violations.push(format!("face {fi}: unknown boundary word"));
                }
                m
            })
            .collect();
        DiagramReport { violations, euler_characteristic: euler, face_matches }
    }

    fn check_rotation(&self, violations: &mut Vec<String>) {
        if self.rotation.len() != self.vertices.len() {
            violations.push("rotation: one entry per vertex expected".into());
            return;
        }
        let next = self.successors();
        for v in 0..self.vertices.len() {
            let rot = &self.rotation[v];
            let ends: BTreeSet<EdgeEnd> = self.ends_at(v).into_iter().collect();
            let listed: BTreeSet<EdgeEnd> = rot.iter().copied().collect();
            if listed != ends || rot.len() != ends.len() {
                violations.push(format!("rotation at {}: does not list the incident edge-ends", self.vertices[v]));
                continue;
            }
            for k in 0..rot.len() {
                let want = rot[(k + 1) % rot.len()];
                if !next.contains(&(rot[k], want)) {
                    violations.push(format!("rotation at {}: inconsistent with face boundaries", self.vertices[v]));
                    break;
                }
            }
        }
    }

    fn checked(&self, p: &Presentation) -> Result<Vec<FaceMatch>> {
        let r = self.validate(p);
        if let Some(v) = r.violations.first() {
            return Err(Error::InvalidDiagram(v.clone()));
        }
        Ok(r.face_matches.into_iter().map(|m| m.expect("valid faces match")).collect())
    }
}

/// First `(relator, epsilon, shift)` with `word = rotate(r^epsilon, shift)`.
pub fn match_word(word: &Word, p: &Presentation) -> Option<FaceMatch> {
    for r in p.relators() {
        if r.word.len() != word.len() {
            continue;
        }
        for (epsilon, w) in [(1i8, r.word.clone()), (-1, r.word.inverse())] {
            if let Some(shift) = (0..w.len()).find(|&s| w.rotated(s) == *word) {
                return Some(FaceMatch { relator: r.id, epsilon, shift });
            }
        }
    }
    None
}

/// A corner of a face, mapped into the Whitehead graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCorner {
    pub face: usize,
    /// The corner lies after this boundary step.
    pub step: usize,
    pub corner: Corner,
    pub epsilon: i8,
}

impl FaceCorner {
    /// Same Whitehead corner, traversed in the opposite direction.
    pub fn is_inverse_of(&self, other: &FaceCorner) -> bool {
        self.corner == other.corner && self.epsilon != other.epsilon
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerCycle {
    pub vertex: usize,
    pub corners: Vec<FaceCorner>,
}

/// The corners around `v` in rotation order.
pub fn corner_cycle(d: &SphericalDiagram, p: &Presentation, v: usize) -> Result<CornerCycle> {
    let matches = d.checked(p)?;
    cycle_at(d, p, &matches, v)
}

fn cycle_at(d: &SphericalDiagram, p: &Presentation, matches: &[FaceMatch], v: usize) -> Result<CornerCycle> {
    if v >= d.vertices.len() {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut corners = Vec::new();
    for &arrive in &d.rotation[v] {
        let (fi, k) = d
            .faces
            .iter()
            .enumerate()
            .find_map(|(fi, f)| f.iter().position(|s| s.arriving() == arrive).map(|k| (fi, k)))
            .expect("validated diagrams pair every edge-end with a face corner");
        let m = matches[fi];
        let r = p.relator(m.relator).expect("matched relators exist");
        let n = r.word.len();
        let corner = corner_at(r.word.letters(), r.id, m.relator_pos(k, n));
        corners.push(FaceCorner { face: fi, step: k, corner, epsilon: m.epsilon });
    }
    Ok(CornerCycle { vertex: v, corners })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReducedness {
    pub reduced: bool,
    /// A vertex with a mirror pair of corners outside the sub-presentations,
    /// and the positions of that pair in its corner cycle.
    pub witness: Option<(usize, [usize; 2])>,
}

/// Whether no vertex carries a corner together with its inverse, ignoring
/// corners of relators in `ts`.
pub fn is_vertex_reduced(d: &SphericalDiagram, p: &Presentation, ts: &[SubPresentation]) -> Result<VertexReducedness> {
    SubPresentation::validate_family(ts, p)?;
    let matches = d.checked(p)?;
    let exempt: BTreeSet<usize> = ts.iter().flat_map(|t| t.relators.iter().copied()).collect();
    for v in 0..d.vertices.len() {
        let cyc = cycle_at(d, p, &matches, v)?;
        let cs = &cyc.corners;
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if cs[i].is_inverse_of(&cs[j]) && !exempt.contains(&cs[i].corner.relator) {
                    return Ok(VertexReducedness { reduced: false, witness: Some((v, [i, j])) });
                }
            }
        }
    }
    Ok(VertexReducedness { reduced: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub sinks: Vec<usize>,
    pub sources: Vec<usize>,
    pub consistent_faces: Vec<usize>,
    pub zero_sum_faces: Vec<usize>,
}

impl Census {
    /// With no consistently oriented face there is a sink or a source.
    pub fn first_implication_holds(&self) -> bool {
        !self.consistent_faces.is_empty() || !self.sinks.is_empty() || !self.sources.is_empty()
    }

    /// With every face of exponent sum zero there is a sink and a source.
    pub fn second_implication_holds(&self, faces: usize) -> bool {
        self.zero_sum_faces.len() != faces || (!self.sinks.is_empty() && !self.sources.is_empty())
    }
}

pub fn orientation_census(d: &SphericalDiagram) -> Census {
    let n = d.vertices.len();
    let (mut heads, mut tails) = (vec![0usize; n], vec![0usize; n]);
    for e in &d.edges {
        heads[e.head] += 1;
        tails[e.tail] += 1;
    }
    let sinks = (0..n).filter(|&v| heads[v] > 0 && tails[v] == 0).collect();
    let sources = (0..n).filter(|&v| tails[v] > 0 && heads[v] == 0).collect();
    let mut consistent_faces = Vec::new();
    let mut zero_sum_faces = Vec::new();
    for (fi, f) in d.faces.iter().enumerate() {
        let along = f.iter().filter(|s| s.direction == Direction::Along).count();
        if along == f.len() || along == 0 {
            consistent_faces.push(fi);
        }
        if 2 * along == f.len() {
            zero_sum_faces.push(fi);
        }
    }
    Census { sinks, sources, consistent_faces, zero_sum_faces }
}

/// Two copies of the disc of relator `relator` glued along their boundary.
pub fn double_disc(p: &Presentation, relator: usize) -> Result<SphericalDiagram> {
    let r = p.relator(relator).ok_or(Error::UnknownRelator(relator))?;
    let n = r.word.len();
    if n == 0 {
        return Err(Error::EmptyRelator(relator));
    }
    let vertices = (0..n).map(|k| format!("v{k}")).collect();
    // letter k runs from vertex k to vertex k+1
    let edges = r
        .word
        .letters()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let (a, b) = (k, (k + 1) % n);
            let (tail, head) = if l.inverse { (b, a) } else { (a, b) };
            DiagramEdge { label: p.generators()[l.generator].clone(), tail, head }
        })
        .collect();
    let dir = |l: &Letter, flip: bool| if l.inverse != flip { Direction::Against } else { Direction::Along };
    let front = r.word.letters().iter().enumerate().map(|(k, l)| Step { edge: k, direction: dir(l, false) }).collect();
    let back = r.word.letters().iter().enumerate().rev().map(|(k, l)| Step { edge: k, direction: dir(l, true) }).collect();
    SphericalDiagram::from_faces(vertices, edges, vec![front, back])
}
