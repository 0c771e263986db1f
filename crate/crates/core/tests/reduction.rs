mod common;

use std::collections::BTreeSet;

use common::{any_lot, injective_lot, triples};
use lotcert_core::sublot::enumerate_sublots;
use lotcert_core::transform::{invert_generators, push_sublot, reduce, reorient, replay, Move, PushedSubLot};
use lotcert_core::{Lot, Presentation};
use proptest::prelude::*;

/// Follows a sub-LOT through the moves by hand: each move deletes one edge
/// and maybe renames one vertex. A folded-away edge lands on its partner.
fn follow(t: &Lot, moves: &[Move], h: &[[String; 3]]) -> (Vec<[String; 3]>, BTreeSet<[String; 3]>) {
    let mut current = triples(t);
    let mut image: BTreeSet<[String; 3]> = h.iter().cloned().collect();
    for m in moves {
        let (drop, rename) = match m {
            Move::Compress { edge, kept, merged } => (*edge, Some((merged, kept))),
            Move::Fold { edges, kept, merged } => (edges[1], Some((merged, kept))),
            Move::BoundaryReduce { edge, .. } => (*edge, None),
        };
        let gone = current.remove(drop);
        if !matches!(m, Move::Fold { .. }) {
            image.remove(&gone);
        }
        if let Some((from, to)) = rename {
            let f = |e: &[String; 3]| e.clone().map(|n| if &n == from { to.clone() } else { n });
            current = current.iter().map(f).collect();
            image = image.iter().map(f).collect();
        }
    }
    (current, image)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reduce_is_reduced_and_replays(t in any_lot(9)) {
        let (r, trace) = reduce(&t);
        prop_assert!(r.predicates().reduced || r.edge_count() == 0);
        prop_assert_eq!(r.vertex_count() + trace.moves.len(), t.vertex_count());
        prop_assert_eq!(replay(&t, &trace).unwrap(), r.clone());
        let (current, _) = follow(&t, &trace.moves, &[]);
        prop_assert_eq!(current, triples(&r));
    }

    #[test]
    fn sublot_images(t in any_lot(7)) {
        let (r, trace) = reduce(&t);
        for h in enumerate_sublots(&t) {
            let (_, expect) = follow(&t, &trace.moves, &h.edge_triples(&t));
            match push_sublot(&t, &h, &trace, &r).unwrap() {
                PushedSubLot::Image { sublot } => {
                    let got: BTreeSet<_> = sublot.edge_triples(&r).into_iter().collect();
                    prop_assert_eq!(got, expect);
                }
                PushedSubLot::Degenerate { .. } => prop_assert!(expect.is_empty()),
            }
        }
    }

    #[test]
    fn injective_reduces_to_injective(t in injective_lot(9)) {
        let (r, _) = reduce(&t);
        prop_assert!(r.is_injective());
    }

    #[test]
    fn flips_and_inversions_are_involutions(t in any_lot(8), mask in any::<u16>()) {
        let flips: BTreeSet<usize> = (0..t.edge_count()).filter(|k| mask >> k & 1 == 1).collect();
        prop_assert_eq!(&reorient(&reorient(&t, &flips).unwrap(), &flips).unwrap(), t.as_log());
        let p = Presentation::of_log(&t);
        let gens: BTreeSet<usize> = (0..t.vertex_count()).filter(|k| mask >> k & 1 == 1).collect();
        prop_assert_eq!(invert_generators(&invert_generators(&p, &gens).unwrap(), &gens).unwrap(), p);
    }
}

#[test]
fn relabel_lists_only_moved_vertices() {
    let t = Lot::from_names(&["a", "b", "c", "d"], &[["a", "a", "b"], ["b", "c", "c"], ["c", "a", "d"]]).unwrap();
    let (r, trace) = reduce(&t);
    for (k, v) in &trace.relabel {
        assert_ne!(Some(k), v.as_ref());
        if let Some(v) = v {
            assert!(r.index_of(v).is_some());
        }
    }
    for n in r.names() {
        assert_eq!(trace.image(n), Some(n.as_str()));
    }
}
