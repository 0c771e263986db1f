//! Reduction moves on LOTs, replayable reduction traces, sub-LOT images,
//! generator inversion and reorientation.
//!
//! Every move removes one edge and one vertex. Edge ids are reassigned
//! densely after each move; a [`Move`] records the ids it acted on *before*
//! the move. Merges keep the surviving vertex's name, so names are stable
//! across a trace and the cumulative relabel map is keyed by name.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::lot::{Edge, Log, Lot};
use crate::presentation::Presentation;
use crate::sublot::SubLot;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Compress { edge: usize, kept: String, merged: String },
    BoundaryReduce { edge: usize, removed: String },
    Fold { edges: [usize; 2], kept: String, merged: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub moves: Vec<Move>,
    /// Every vertex whose image differs from itself: its surviving vertex, or
    /// `None` if it was deleted by a boundary reduction.
    pub relabel: BTreeMap<String, Option<String>>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Image of a source vertex, `None` if deleted.
    pub fn image<'a>(&'a self, name: &'a str) -> Option<&'a str> {
        match self.relabel.get(name) {
            Some(img) => img.as_deref(),
            None => Some(name),
        }
    }
}

/// Merges vertex `merged` into `kept` and drops edge `drop`.
fn merge(log: &Log, drop: usize, kept: usize, merged: usize) -> Log {
    let shift = |v: usize| {
        let v = if v == merged { kept } else { v };
        if v > merged {
            v - 1
        } else {
            v
        }
    };
    let mut names = log.names().to_vec();
    names.remove(merged);
    let edges = log
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, _)| id != drop)
        .map(|(_, e)| Edge::new(shift(e.from), shift(e.label), shift(e.to)))
        .collect();
    Log::new(names, edges).expect("merge keeps names valid")
}

/// Deletes vertex `removed`, which must not occur on any edge but `drop`.
fn delete(log: &Log, drop: usize, removed: usize) -> Log {
    let shift = |v: usize| if v > removed { v - 1 } else { v };
    let mut names = log.names().to_vec();
    names.remove(removed);
    let edges = log
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, _)| id != drop)
        .map(|(_, e)| Edge::new(shift(e.from), shift(e.label), shift(e.to)))
        .collect();
    Log::new(names, edges).expect("delete keeps names valid")
}

/// Removes edge `[a,a,b]` or `[b,a,a]` and identifies `b` with `a`.
pub fn compress_step(t: &Lot, edge: usize) -> Result<(Lot, Move)> {
    let e = t.edge(edge)?;
    let (kept, merged) = if e.label == e.from {
        (e.from, e.to)
    } else if e.label == e.to {
        (e.to, e.from)
    } else {
        return Err(Error::NotCompressible(edge));
    };
    let mv = Move::Compress {
        edge,
        kept: t.name(kept).to_string(),
        merged: t.name(merged).to_string(),
    };
    Ok((Lot::new_unchecked(merge(t, edge, kept, merged)), mv))
}

/// Removes an edge together with a boundary endpoint that labels nothing.
pub fn boundary_reduce_step(t: &Lot, edge: usize) -> Result<(Lot, Move)> {
    t.edge(edge)?;
    let removed = t.boundary_endpoint(edge).ok_or(Error::NotBoundaryReducible(edge))?;
    let mv = Move::BoundaryReduce { edge, removed: t.name(removed).to_string() };
    Ok((Lot::new_unchecked(delete(t, edge, removed)), mv))
}

/// Folds `[a,d,b]`, `[c,d,b]` (or `[b,d,a]`, `[b,d,c]`) into one edge and
/// identifies `c` with `a`.
pub fn fold_step(t: &Lot, e1: usize, e2: usize) -> Result<(Lot, Move)> {
    let (a, b) = (t.edge(e1)?, t.edge(e2)?);
    if e1 == e2 || a.label != b.label {
        return Err(Error::NotFoldable(e1, e2));
    }
    let (kept, merged) = if a.to == b.to && a.from != b.from {
        (a.from, b.from)
    } else if a.from == b.from && a.to != b.to {
        (a.to, b.to)
    } else {
        return Err(Error::NotFoldable(e1, e2));
    };
    let mv = Move::Fold {
        edges: [e1, e2],
        kept: t.name(kept).to_string(),
        merged: t.name(merged).to_string(),
    };
    Ok((Lot::new_unchecked(merge(t, e2, kept, merged)), mv))
}

/// The first applicable move: compressions before folds before boundary
/// reductions, each scanned in edge-id order.
pub fn next_move(t: &Lot) -> Option<Result<(Lot, Move)>> {
    if let Some(id) = t.first_uncompressed() {
        return Some(compress_step(t, id));
    }
    if let Some((i, j)) = t.first_fold() {
        return Some(fold_step(t, i, j));
    }
    t.first_boundary_reduction().map(|(id, _)| boundary_reduce_step(t, id))
}

/// Applies moves until the LOT is reduced (a single vertex counts as
/// reduced).
pub fn reduce(t: &Lot) -> (Lot, ReductionTrace) {
    let mut current = t.clone();
    let mut moves = Vec::new();
    let mut image: BTreeMap<String, Option<String>> =
        t.names().iter().map(|n| (n.clone(), Some(n.clone()))).collect();
    while let Some(step) = next_move(&current) {
        let (next, mv) = step.expect("next_move only proposes applicable moves");
        match &mv {
            Move::Compress { kept, merged, .. } | Move::Fold { kept, merged, .. } => {
                for img in image.values_mut() {
                    if img.as_deref() == Some(merged.as_str()) {
                        *img = Some(kept.clone());
                    }
                }
            }
            Move::BoundaryReduce { removed, .. } => {
                for img in image.values_mut() {
                    if img.as_deref() == Some(removed.as_str()) {
                        *img = None;
                    }
                }
            }
        }
        moves.push(mv);
        current = next;
    }
    let relabel = image
        .into_iter()
        .filter(|(k, v)| v.as_deref() != Some(k.as_str()))
        .collect();
    (current, ReductionTrace { moves, relabel })
}

/// Re-applies the moves of `trace` to `source`, checking that each recorded
/// move is legal and names the same vertices.
pub fn replay(source: &Lot, trace: &ReductionTrace) -> Result<Lot> {
    let mut current = source.clone();
    let mut image: BTreeMap<String, Option<String>> =
        source.names().iter().map(|n| (n.clone(), Some(n.clone()))).collect();
    for (k, mv) in trace.moves.iter().enumerate() {
        let (next, done) = match mv {
            Move::Compress { edge, .. } => compress_step(&current, *edge)?,
            Move::BoundaryReduce { edge, .. } => boundary_reduce_step(&current, *edge)?,
            Move::Fold { edges: [a, b], .. } => fold_step(&current, *a, *b)?,
        };
        if done != *mv {
            return Err(Error::TraceMismatch(format!("move {k} recorded as {mv:?}, replays as {done:?}")));
        }
        let (from, to) = match mv {
            Move::Compress { kept, merged, .. } | Move::Fold { kept, merged, .. } => {
                (merged.clone(), Some(kept.clone()))
            }
            Move::BoundaryReduce { removed, .. } => (removed.clone(), None),
        };
        for img in image.values_mut() {
            if img.as_deref() == Some(from.as_str()) {
                *img = to.clone();
            }
        }
        current = next;
    }
    let relabel: BTreeMap<String, Option<String>> = image
        .into_iter()
        .filter(|(k, v)| v.as_deref() != Some(k.as_str()))
        .collect();
    if relabel != trace.relabel {
        return Err(Error::TraceMismatch("relabel map differs from the replayed moves".into()));
    }
    Ok(current)
}

/// Image of a sub-LOT under a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PushedSubLot {
    Image { sublot: SubLot },
    /// The image has no edges; `vertex` is the surviving vertex, if any.
    Degenerate { vertex: Option<String> },
}

/// Image of sub-LOT `h` of `source` in `target`, the result of `trace`.
///
/// The image is spanned by the images of `h`'s vertices. In a tree the
/// edges induced on that connected vertex set are exactly the images of
/// `h`'s edges.
pub fn push_sublot(source: &Lot, h: &SubLot, trace: &ReductionTrace, target: &Lot) -> Result<PushedSubLot> {
    h.validate(source)?;
    let verts: BTreeSet<usize> = h
        .vertices
        .iter()
        .filter_map(|n| trace.image(n))
        .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVertex(n.to_string())))
        .collect::<Result<_>>()?;
    let edges: Vec<usize> = target
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| verts.contains(&e.from) && verts.contains(&e.to))
        .map(|(id, _)| id)
        .collect();
    if edges.is_empty() {
        let vertex = verts.iter().next().map(|&v| target.name(v).to_string());
        return Ok(PushedSubLot::Degenerate { vertex });
    }
    Ok(PushedSubLot::Image { sublot: SubLot::new(target, edges)? })
}

/// Replaces every occurrence of a generator in `invert` by its inverse.
pub fn invert_generators(p: &Presentation, invert: &BTreeSet<usize>) -> Result<Presentation> {
    if let Some(&g) = invert.iter().find(|&&g| g >= p.generators().len()) {
        return Err(Error::VertexOutOfRange(g));
    }
    let relators = p
        .relators()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            for l in &mut r.word.0 {
                if invert.contains(&l.generator) {
                    l.inverse = !l.inverse;
                }
            }
            r
        })
        .collect();
    Presentation::new(p.generators().to_vec(), relators)
}

/// Reverses the listed edges; labels are unchanged.
pub fn reorient(g: &Log, flips: &BTreeSet<usize>) -> Result<Log> {
    if let Some(&id) = flips.iter().find(|&&id| id >= g.edge_count()) {
        return Err(Error::UnknownEdge(id));
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, &e)| if flips.contains(&id) { e.reversed() } else { e })
        .collect();
    Log::new(g.names().to_vec(), edges)
}

pub fn reorient_lot(t: &Lot, flips: &BTreeSet<usize>) -> Result<Lot> {
    Ok(Lot::new_unchecked(reorient(t, flips)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_word;

    fn names(t: &Lot) -> Vec<&str> {
        t.names().iter().map(String::as_str).collect()
    }

    #[test]
    fn compress_two_vertices() {
        let t = Lot::from_names(&["a", "b"], &[["a", "a", "b"]]).unwrap();
        let (u, mv) = compress_step(&t, 0).unwrap();
        assert_eq!(names(&u), ["a"]);
        assert_eq!(u.edge_count(), 0);
        assert_eq!(mv, Move::Compress { edge: 0, kept: "a".into(), merged: "b".into() });
    }

    #[test]
    fn compress_relabels_labels() {
        // [b,c,c] merges b into c; the label b of [a,b,c]... here: edges [a,a,b],[b,c,c]
        let t = Lot::from_names(&["a", "b", "c"], &[["a", "a", "b"], ["b", "c", "c"]]).unwrap();
        let (u, _) = compress_step(&t, 0).unwrap();
        assert_eq!(names(&u), ["a", "c"]);
        assert_eq!(u.describe_edge(0), "[a,c,c]");
        let t = Lot::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "b", "c"]]).unwrap();
        assert_eq!(compress_step(&t, 0), Err(Error::NotCompressible(0)));
    }

    #[test]
    fn boundary_reduce_cases() {
        let loi = Lot::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "a", "c"]]).unwrap();
        assert_eq!(boundary_reduce_step(&loi, 1), Err(Error::NotBoundaryReducible(1)));
        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["a", "c", "b"], ["b", "a", "c"], ["c", "a", "d"]],
        )
        .unwrap();
        let (u, mv) = boundary_reduce_step(&t, 2).unwrap();
        assert_eq!(u, loi);
        assert_eq!(mv, Move::BoundaryReduce { edge: 2, removed: "d".into() });
        let one = Lot::from_names(&["x", "y"], &[["x", "y", "y"]]).unwrap();
        let (u, _) = boundary_reduce_step(&one, 0).unwrap();
        assert_eq!(names(&u), ["y"]);
    }

    #[test]
    fn fold_both_orientations() {
        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["a", "d", "b"], ["c", "d", "b"], ["b", "a", "d"]],
        )
        .unwrap();
        let (u, mv) = fold_step(&t, 0, 1).unwrap();
        assert_eq!(names(&u), ["a", "b", "d"]);
        assert_eq!(u.describe_edge(0), "[a,d,b]");
        assert_eq!(mv, Move::Fold { edges: [0, 1], kept: "a".into(), merged: "c".into() });

        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["b", "d", "a"], ["b", "d", "c"], ["b", "c", "d"]],
        )
        .unwrap();
        let (u, _) = fold_step(&t, 0, 1).unwrap();
        assert_eq!(u.describe_edge(0), "[b,d,a]");
        assert_eq!(u.describe_edge(1), "[b,a,d]");

        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["a", "d", "b"], ["b", "d", "c"], ["c", "a", "d"]],
        )
        .unwrap();
        assert_eq!(fold_step(&t, 0, 1), Err(Error::NotFoldable(0, 1)));
    }

    #[test]
    fn reduce_small_cases() {
        let v = Lot::single_vertex("x").unwrap();
        let (r, tr) = reduce(&v);
        assert_eq!(r, v);
        assert!(tr.is_empty());

        let t = Lot::from_names(&["a", "b"], &[["a", "a", "b"]]).unwrap();
        let (r, tr) = reduce(&t);
        assert_eq!(names(&r), ["a"]);
        assert_eq!(tr.moves.len(), 1);
        assert!(matches!(tr.moves[0], Move::Compress { .. }));
        assert_eq!(tr.relabel.get("b"), Some(&Some("a".into())));

        let loi = Lot::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "a", "c"]]).unwrap();
        let (r, tr) = reduce(&loi);
        assert_eq!(r, loi);
        assert!(tr.is_empty());
    }

    #[test]
    fn replay_detects_tampering() {
        let t = Lot::from_names(
            &["a", "b", "c", "d"],
            &[["a", "c", "b"], ["b", "a", "c"], ["c", "a", "d"]],
        )
        .unwrap();
        let (r, mut tr) = reduce(&t);
        assert_eq!(replay(&t, &tr).unwrap(), r);
        tr.relabel.clear();
        assert!(matches!(replay(&t, &tr), Err(Error::TraceMismatch(_))));
    }

    #[test]
    fn push_through_identity_and_fold() {
        let t = Lot::from_names(
            &["a", "b", "c", "d", "e"],
            &[["a", "d", "b"], ["c", "d", "b"], ["b", "a", "d"], ["d", "e", "e"]],
        )
        .unwrap();
        let h = SubLot::new(&t, [0, 1, 2]).unwrap();
        let (r, tr) = reduce(&t);
        assert_eq!(push_sublot(&t, &h, &ReductionTrace::default(), &t).unwrap(), PushedSubLot::Image {
            sublot: h.clone()
        });
        match push_sublot(&t, &h, &tr, &r).unwrap() {
            PushedSubLot::Image { sublot } => sublot.validate(&r).unwrap(),
            PushedSubLot::Degenerate { .. } => {}
        }
    }

    #[test]
    fn inversion() {
        let t = crate::lot::Log::from_names(&["a", "b", "c"], &[["a", "c", "b"]]).unwrap();
        let p = Presentation::of_log(&t);
        assert_eq!(invert_generators(&p, &BTreeSet::new()).unwrap(), p);
        let s: BTreeSet<usize> = [0].into();
        let q = invert_generators(&p, &s).unwrap();
        assert_eq!(q.relators()[0].word, parse_word("a^-1 c b^-1 c^-1", p.generators()).unwrap());
        assert_eq!(invert_generators(&q, &s).unwrap(), p);
        assert!(invert_generators(&p, &[9].into()).is_err());
    }

    #[test]
    fn reorientation() {
        let t = Lot::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "a", "c"]]).unwrap();
        assert_eq!(reorient(&t, &BTreeSet::new()).unwrap(), *t.as_log());
        let f = reorient(&t, &[0].into()).unwrap();
        assert_eq!(f.describe_edge(0), "[b,c,a]");
        let all: BTreeSet<usize> = [0, 1].into();
        assert_eq!(reorient(&reorient(&t, &all).unwrap(), &all).unwrap(), *t.as_log());
        assert_eq!(reorient(&t, &[5].into()), Err(Error::UnknownEdge(5)));
    }
}
