//! Asphericity certificates for labeled oriented trees, the reorientation
//! search, and an independent certificate checker.
//!
//! [`certify`] follows the induction on the number of vertices: a single
//! vertex is aspherical; a non-reduced LOT is certified through its reduced
//! image; a reduced LOT is split along its maximal proper sub-LOTs, either as
//! an amalgam of two intersecting ones (Case 1) or, when they are pairwise
//! disjoint, by a reorientation whose presentation passes the Stallings test
//! relative to them (Case 2). User assumptions stand in for sub-certificates
//! where the LOT is not injective.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::lot::Lot;
use crate::presentation::{Presentation, SubPresentation};
use crate::sublot::{check_disjoint, collapse_sublots, maximal_proper_sublots, SubLot};
use crate::transform::{push_sublot, reduce, reorient_lot, replay, PushedSubLot, ReductionTrace};
use crate::whitehead::{relative_stallings_test, StallingsReport};
use crate::Result;

pub type EdgeTriple = [String; 3];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionKind {
    /// The sub-LOT given by `edges` is aspherical.
    #[default]
    Aspherical,
    /// The inclusion of `edges` into `into` is injective on fundamental groups.
    Pi1Injective,
}

/// An externally justified fact about a sub-LOT, named by its edge triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    #[serde(default)]
    pub kind: AssumptionKind,
    pub edges: Vec<EdgeTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub into: Option<Vec<EdgeTriple>>,
    #[serde(default)]
    pub reason: String,
}

impl Assumption {
    pub fn aspherical(edges: Vec<EdgeTriple>, reason: &str) -> Self {
        Assumption { kind: AssumptionKind::Aspherical, edges, into: None, reason: reason.to_string() }
    }

    pub fn pi1_injective(edges: Vec<EdgeTriple>, into: Vec<EdgeTriple>, reason: &str) -> Self {
        Assumption { kind: AssumptionKind::Pi1Injective, edges, into: Some(into), reason: reason.to_string() }
    }

    fn covers(&self, t: &Lot) -> bool {
        same_edges(&self.edges, t)
    }

    fn within(&self, t: &Lot) -> bool {
        let all = triple_set_of(t);
        let inside = |es: &[EdgeTriple]| es.iter().all(|e| all.contains(e));
        inside(&self.edges) && self.into.as_deref().is_none_or(inside)
    }

    fn attests(&self, sub: &Lot, into: &Lot) -> bool {
        self.kind == AssumptionKind::Pi1Injective
            && same_edges(&self.edges, sub)
            && self.into.as_deref().is_some_and(|i| same_edges(i, into))
    }
}

fn triple_set_of(t: &Lot) -> BTreeSet<EdgeTriple> {
    (0..t.edge_count()).map(|id| t.edge_names(id).map(String::from)).collect()
}

fn same_edges(es: &[EdgeTriple], t: &Lot) -> bool {
    es.len() == t.edge_count() && es.iter().cloned().collect::<BTreeSet<_>>() == triple_set_of(t)
}

/// `T_i ∩ T_j`: a sub-LOT, or a single shared vertex when no edge is shared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Intersection {
    SubLot { sublot: SubLot },
    Vertex { vertex: String },
}

impl Intersection {
    pub fn of(t: &Lot, a: &SubLot, b: &SubLot) -> Option<Intersection> {
        let shared = a.edge_intersection(b);
        if !shared.is_empty() {
            return SubLot::new(t, shared).ok().map(|sublot| Intersection::SubLot { sublot });
        }
        a.vertices
            .iter()
            .find(|v| b.vertices.contains(v))
            .map(|v| Intersection::Vertex { vertex: v.clone() })
    }

    pub fn to_lot(&self, t: &Lot) -> Lot {
        match self {
            Intersection::SubLot { sublot } => sublot.to_lot(t),
            Intersection::Vertex { vertex } => Lot::single_vertex(vertex).expect("vertex names are valid"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    SingleVertex {
        vertex: String,
    },
    Reduced {
        trace: ReductionTrace,
        inner: Box<Certificate>,
    },
    Case1 {
        ti: SubLot,
        tj: SubLot,
        tij: Intersection,
        cert_i: Box<Certificate>,
        cert_j: Box<Certificate>,
        cert_ij: Box<Certificate>,
        /// Injectivity attestations used for sides that are not injective LOTs.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        attested: Vec<Assumption>,
    },
    Case2 {
        sublots: Vec<SubLot>,
        flips: Vec<usize>,
        /// Labels of the flipped edges.
        inverted: Vec<String>,
        report: StallingsReport,
        subcerts: Vec<Certificate>,
    },
    Assumed {
        assumption: Assumption,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SingleVertex { .. } => "single_vertex",
            Certificate::Reduced { .. } => "reduced",
            Certificate::Case1 { .. } => "case1",
            Certificate::Case2 { .. } => "case2",
            Certificate::Assumed { .. } => "assumed",
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Certificate::Reduced { inner, .. } => inner.size(),
            Certificate::Case1 { cert_i, cert_j, cert_ij, .. } => cert_i.size() + cert_j.size() + cert_ij.size(),
            Certificate::Case2 { subcerts, .. } => subcerts.iter().map(Certificate::size).sum(),
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    RelativeInjectivityFailed { collapsed: Vec<EdgeTriple> },
    MissingPi1Injectivity { sub: Vec<EdgeTriple>, into: Vec<EdgeTriple> },
    SearchExhausted,
    InvalidAssumption { message: String },
    Internal { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyFailure {
    pub reason: FailureReason,
    /// Steps from the root to the failing node.
    pub path: Vec<String>,
    /// Edges of the LOT at the failing node.
    pub at: Vec<EdgeTriple>,
}

fn render_edges(es: &[EdgeTriple]) -> String {
    let parts: Vec<String> = es.iter().map(|e| format!("[{},{},{}]", e[0], e[1], e[2])).collect();
    parts.join(",")
}

impl fmt::Display for CertifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            FailureReason::RelativeInjectivityFailed { collapsed } => {
                write!(f, "relative injectivity failed at {} (collapsed: {})", render_edges(&self.at), render_edges(collapsed))?
            }
            FailureReason::MissingPi1Injectivity { sub, into } => {
                write!(f, "no injectivity attestation for {} into {}", render_edges(sub), render_edges(into))?
            }
            FailureReason::SearchExhausted => write!(f, "reorientation search exhausted at {}", render_edges(&self.at))?,
            FailureReason::InvalidAssumption { message } => write!(f, "invalid assumption: {message}")?,
            FailureReason::Internal { message } => write!(f, "internal inconsistency at {}: {message}", render_edges(&self.at))?,
        }
        if !self.path.is_empty() {
            write!(f, " [path: {}]", self.path.join("/"))?;
        }
        Ok(())
    }
}

fn edges_of(t: &Lot) -> Vec<EdgeTriple> {
    (0..t.edge_count()).map(|id| t.edge_names(id).map(String::from)).collect()
}

/// A set of edges to reverse, outside every collapse class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reorientation {
    pub flips: Vec<usize>,
    /// Labels of the flipped edges, in flip order.
    pub labels: Vec<String>,
}

/// Searches orientations of the LOT obtained by collapsing `ts` for one
/// whose positive and negative Whitehead graphs are both trees, trying each
/// edge unflipped before flipped. Returns the flips lifted to `t`, or `None`
/// if no orientation works.
pub fn find_reorientation(t: &Lot, ts: &[SubLot]) -> Result<Option<Reorientation>> {
    let (collapsed, map) = collapse_sublots(t, ts)?;
    let n = collapsed.vertex_count();
    let mut flipped = Vec::with_capacity(collapsed.edge_count());
    let mut classes = alloc::vec![false; n];
    for c in &map.classes {
        classes[collapsed.index_of(&c.representative).expect("representatives survive")] = true;
    }
    let found = search(&collapsed, 0, &classes, DisjointSets::new(n), DisjointSets::new(n), &mut flipped);
    if !found {
        return Ok(None);
    }
    let flips: Vec<usize> = map
        .edge_map
        .iter()
        .enumerate()
        .filter_map(|(id, m)| m.filter(|&k| flipped[k]).map(|_| id))
        .collect();
    let labels = flips.iter().map(|&id| t.name(t.edges()[id].label).to_string()).collect();
    Ok(Some(Reorientation { flips, labels }))
}

/// Depth-first over edge orientations. A corner closing a cycle prunes the
/// branch, except loops at class nodes, which the collapse deletes.
fn search(p: &Lot, k: usize, classes: &[bool], plus: DisjointSets, minus: DisjointSets, flipped: &mut Vec<bool>) -> bool {
    if k == p.edge_count() {
        let (mut pl, mut mi) = (plus, minus);
        return (1..p.vertex_count()).all(|v| pl.find(v) == pl.find(0) && mi.find(v) == mi.find(0));
    }
    let e = p.edges()[k];
    let z = e.label;
    for flip in [false, true] {
        let (x, y) = if flip { (e.to, e.from) } else { (e.from, e.to) };
        let (mut pl, mut mi) = (plus.clone(), minus.clone());
        // [x,z,y] contributes {x+,z+} and {y-,z-}
        let ok = |d: &mut DisjointSets, a: usize| (a == z && classes[a]) || d.union(a, z);
        if !ok(&mut pl, x) || !ok(&mut mi, y) {
            continue;
        }
        flipped.push(flip);
        if search(p, k + 1, classes, pl, mi, flipped) {
            return true;
        }
        flipped.pop();
    }
    false
}

/// Certifies asphericity of `t`, using `assumptions` (stated for `t`) where
/// the induction needs facts it cannot derive.
pub fn certify(t: &Lot, assumptions: &[Assumption]) -> core::result::Result<Certificate, CertifyFailure> {
    for a in assumptions {
        let bad = |message: String| CertifyFailure {
            reason: FailureReason::InvalidAssumption { message },
            path: Vec::new(),
            at: edges_of(t),
        };
        SubLot::from_edge_names(t, &a.edges).map_err(|e| bad(format!("{e}")))?;
        match (a.kind, &a.into) {
            (AssumptionKind::Aspherical, None) => {}
            (AssumptionKind::Pi1Injective, Some(into)) => {
                SubLot::from_edge_names(t, into).map_err(|e| bad(format!("{e}")))?;
            }
            (AssumptionKind::Aspherical, Some(_)) => return Err(bad("aspherical assumptions take no \"into\"".into())),
            (AssumptionKind::Pi1Injective, None) => return Err(bad("injectivity attestations need \"into\"".into())),
        }
    }
    let mut path = Vec::new();
    Certifier { path: &mut path }.run(t, assumptions)
}

struct Certifier<'p> {
    path: &'p mut Vec<String>,
}

impl Certifier<'_> {
    fn fail(&self, t: &Lot, reason: FailureReason) -> CertifyFailure {
        CertifyFailure { reason, path: self.path.clone(), at: edges_of(t) }
    }

    fn internal(&self, t: &Lot, message: String) -> CertifyFailure {
        self.fail(t, FailureReason::Internal { message })
    }

    fn descend(&mut self, step: String, t: &Lot, assumptions: &[Assumption]) -> core::result::Result<Certificate, CertifyFailure> {
        let inner: Vec<Assumption> = assumptions.iter().filter(|a| a.within(t)).cloned().collect();
        self.path.push(step);
        let c = self.run(t, &inner)?;
        self.path.pop();
        Ok(c)
    }

    fn run(&mut self, t: &Lot, assumptions: &[Assumption]) -> core::result::Result<Certificate, CertifyFailure> {
        if t.edge_count() == 0 {
            return Ok(Certificate::SingleVertex { vertex: t.name(0).to_string() });
        }
        if let Some(a) = assumptions.iter().find(|a| a.kind == AssumptionKind::Aspherical && a.covers(t)) {
            return Ok(Certificate::Assumed { assumption: a.clone() });
        }
        if !t.is_reduced() {
            let (r, trace) = reduce(t);
            let pushed = push_assumptions(t, &trace, &r, assumptions).map_err(|e| self.internal(t, format!("{e}")))?;
            let inner = self.descend("reduced".into(), &r, &pushed)?;
            return Ok(Certificate::Reduced { trace, inner: Box::new(inner) });
        }
        let ts = maximal_proper_sublots(t);
        if let Some((i, j)) = first_intersecting(&ts) {
            return self.case1(t, &ts[i], &ts[j], assumptions);
        }
        self.case2(t, ts, assumptions)
    }

    fn case1(&mut self, t: &Lot, ti: &SubLot, tj: &SubLot, assumptions: &[Assumption]) -> core::result::Result<Certificate, CertifyFailure> {
        let union: BTreeSet<usize> = ti.edges.iter().chain(&tj.edges).copied().collect();
        if union.len() != t.edge_count() {
            return Err(self.internal(t, "intersecting maximal sub-LOTs do not cover the LOT".into()));
        }
        let tij = Intersection::of(t, ti, tj)
            .ok_or_else(|| self.internal(t, "intersection of sub-LOTs is not a sub-LOT".into()))?;
        let (li, lj, lij) = (ti.to_lot(t), tj.to_lot(t), tij.to_lot(t));
        let mut attested = Vec::new();
        if lij.edge_count() > 0 {
            for side in [&li, &lj] {
                if side.is_injective() {
                    continue;
                }
                match assumptions.iter().find(|a| a.attests(&lij, side)) {
                    Some(a) => attested.push(a.clone()),
                    None => {
                        return Err(self.fail(t, FailureReason::MissingPi1Injectivity { sub: edges_of(&lij), into: edges_of(side) }))
                    }
                }
            }
        }
        let cert_i = self.descend("case1.ti".into(), &li, assumptions)?;
        let cert_j = self.descend("case1.tj".into(), &lj, assumptions)?;
        let cert_ij = self.descend("case1.tij".into(), &lij, assumptions)?;
        Ok(Certificate::Case1 {
            ti: ti.clone(),
            tj: tj.clone(),
            tij,
            cert_i: Box::new(cert_i),
            cert_j: Box::new(cert_j),
            cert_ij: Box::new(cert_ij),
            attested,
        })
    }

    fn case2(&mut self, t: &Lot, ts: Vec<SubLot>, assumptions: &[Assumption]) -> core::result::Result<Certificate, CertifyFailure> {
        let (collapsed, _) = collapse_sublots(t, &ts).map_err(|e| self.internal(t, format!("{e}")))?;
        if !collapsed.is_injective() {
            return Err(self.fail(t, FailureReason::RelativeInjectivityFailed { collapsed: edges_of(&collapsed) }));
        }
        let mut subcerts = Vec::with_capacity(ts.len());
        for (k, s) in ts.iter().enumerate() {
            subcerts.push(self.descend(format!("case2.sublot{k}"), &s.to_lot(t), assumptions)?);
        }
        let r = find_reorientation(t, &ts)
            .map_err(|e| self.internal(t, format!("{e}")))?
            .ok_or_else(|| self.fail(t, FailureReason::SearchExhausted))?;
        let distinct: BTreeSet<&String> = r.labels.iter().collect();
        if distinct.len() != r.labels.len() {
            return Err(self.internal(t, "flipped edges share a label".into()));
        }
        let report = relative_report(t, &ts, &r.flips).map_err(|e| self.internal(t, format!("{e}")))?;
        if !report.passed() || !report.both_sides_trees() {
            return Err(self.internal(t, "reorientation does not pass the relative tree test".into()));
        }
        Ok(Certificate::Case2 { sublots: ts, flips: r.flips, inverted: r.labels, report, subcerts })
    }
}

fn first_intersecting(ts: &[SubLot]) -> Option<(usize, usize)> {
    (0..ts.len()).flat_map(|i| (i + 1..ts.len()).map(move |j| (i, j))).find(|&(i, j)| ts[i].shares_vertex(&ts[j]))
}

/// Relative Stallings report of `t` reoriented along `flips`, relative to
/// the sub-presentations of `ts`.
fn relative_report(t: &Lot, ts: &[SubLot], flips: &[usize]) -> Result<StallingsReport> {
    let q = reorient_lot(t, &flips.iter().copied().collect())?;
    let subs: Vec<SubPresentation> = ts.iter().map(|s| s.sub_presentation(&q)).collect();
    relative_stallings_test(&Presentation::of_log(&q), &subs)
}

fn push_assumptions(source: &Lot, trace: &ReductionTrace, target: &Lot, assumptions: &[Assumption]) -> Result<Vec<Assumption>> {
    let push = |es: &[EdgeTriple]| -> Result<Option<Vec<EdgeTriple>>> {
        let h = SubLot::from_edge_names(source, es)?;
        Ok(match push_sublot(source, &h, trace, target)? {
            PushedSubLot::Image { sublot } => Some(sublot.edge_triples(target)),
            PushedSubLot::Degenerate { .. } => None,
        })
    };
    let mut out = Vec::new();
    for a in assumptions {
        let Some(edges) = push(&a.edges)? else { continue };
        let into = match &a.into {
            Some(i) => match push(i)? {
                Some(i) => Some(i),
                None => continue,
            },
            None => None,
        };
        out.push(Assumption { kind: a.kind, edges, into, reason: a.reason.clone() });
    }
    Ok(out)
}

/// The first node of a certificate that does not check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub path: Vec<String>,
    pub node: String,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} node at /{}: {}", self.node, self.path.join("/"), self.message)
    }
}

/// Re-derives every claim of `c` about `t`.
pub fn check_certificate(t: &Lot, c: &Certificate) -> core::result::Result<(), CheckFailure> {
    let mut path = Vec::new();
    check_node(t, c, &mut path)
}

fn check_node(t: &Lot, c: &Certificate, path: &mut Vec<String>) -> core::result::Result<(), CheckFailure> {
    let fail = |path: &[String], message: String| CheckFailure { path: path.to_vec(), node: c.kind().into(), message };
    let sub = |step: String, lot: &Lot, cert: &Certificate, path: &mut Vec<String>| -> core::result::Result<(), CheckFailure> {
        path.push(step);
        check_node(lot, cert, path)?;
        path.pop();
        Ok(())
    };
    match c {
        Certificate::SingleVertex { vertex } => {
            if t.edge_count() != 0 || t.name(0) != vertex {
                return Err(fail(path, format!("LOT is not the single vertex {vertex}")));
            }
        }
        Certificate::Assumed { assumption } => {
            if assumption.kind != AssumptionKind::Aspherical || !assumption.covers(t) {
                return Err(fail(path, "assumption does not describe this LOT".into()));
            }
        }
        Certificate::Reduced { trace, inner } => {
            if t.is_reduced() {
                return Err(fail(path, "LOT is already reduced".into()));
            }
            let r = replay(t, trace).map_err(|e| fail(path, format!("{e}")))?;
            if r.edge_count() > 0 && !r.is_reduced() {
                return Err(fail(path, "trace does not end at a reduced LOT".into()));
            }
            sub("reduced".into(), &r, inner, path)?;
        }
        Certificate::Case1 { ti, tj, tij, cert_i, cert_j, cert_ij, attested } => {
            if !t.is_reduced() {
                return Err(fail(path, "LOT is not reduced".into()));
            }
            for s in [ti, tj] {
                s.validate(t).map_err(|e| fail(path, format!("{e}")))?;
            }
            let maximal = maximal_proper_sublots(t);
            if !maximal.contains(ti) || !maximal.contains(tj) || ti == tj {
                return Err(fail(path, "sides are not distinct maximal proper sub-LOTs".into()));
            }
            if !ti.shares_vertex(tj) {
                return Err(fail(path, "sides do not intersect".into()));
            }
            let union: BTreeSet<usize> = ti.edges.iter().chain(&tj.edges).copied().collect();
            if union.len() != t.edge_count() {
                return Err(fail(path, "sides do not cover the LOT".into()));
            }
            if Intersection::of(t, ti, tj).as_ref() != Some(tij) {
                return Err(fail(path, "recorded intersection is wrong".into()));
            }
            if let Intersection::SubLot { sublot } = tij {
                sublot.validate(t).map_err(|e| fail(path, format!("{e}")))?;
            }
            let (li, lj, lij) = (ti.to_lot(t), tj.to_lot(t), tij.to_lot(t));
            if lij.edge_count() > 0 {
                for side in [&li, &lj] {
                    if !side.is_injective() && !attested.iter().any(|a| a.attests(&lij, side)) {
                        return Err(fail(path, "non-injective side without injectivity attestation".into()));
                    }
                }
            }
            sub("case1.ti".into(), &li, cert_i, path)?;
            sub("case1.tj".into(), &lj, cert_j, path)?;
            sub("case1.tij".into(), &lij, cert_ij, path)?;
        }
        Certificate::Case2 { sublots, flips, inverted, report, subcerts } => {
            if !t.is_reduced() {
                return Err(fail(path, "LOT is not reduced".into()));
            }
            check_disjoint(t, sublots).map_err(|e| fail(path, format!("{e}")))?;
            if maximal_proper_sublots(t) != *sublots {
                return Err(fail(path, "sub-LOTs are not the maximal proper sub-LOTs".into()));
            }
            let (collapsed, _) = collapse_sublots(t, sublots).map_err(|e| fail(path, format!("{e}")))?;
            if !collapsed.is_injective() {
                return Err(fail(path, "not injective relative to the sub-LOTs".into()));
            }
            if let Some(&id) = flips.iter().find(|&&id| id >= t.edge_count()) {
                return Err(fail(path, format!("flip of unknown edge {id}")));
            }
            if let Some(&id) = flips.iter().find(|&&id| sublots.iter().any(|s| s.edges.contains(&id))) {
                return Err(fail(path, format!("flipped edge {} lies inside a sub-LOT", t.describe_edge(id))));
            }
            let labels: Vec<String> = flips.iter().map(|&id| t.name(t.edges()[id].label).to_string()).collect();
            if labels != *inverted {
                return Err(fail(path, "inverted generators are not the flipped labels".into()));
            }
            if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
                return Err(fail(path, "flipped edges share a label".into()));
            }
            let fresh = relative_report(t, sublots, flips).map_err(|e| fail(path, format!("{e}")))?;
            if fresh != *report {
                return Err(fail(path, "recorded Stallings report differs from a fresh run".into()));
            }
            if !fresh.passed() || !fresh.both_sides_trees() {
                return Err(fail(path, "reorientation is not a relative tree on both sides".into()));
            }
            if subcerts.len() != sublots.len() {
                return Err(fail(path, "one sub-certificate per sub-LOT expected".into()));
            }
            for (k, (s, sc)) in sublots.iter().zip(subcerts).enumerate() {
                sub(format!("case2.sublot{k}"), &s.to_lot(t), sc, path)?;
            }
        }
    }
    Ok(())
}
