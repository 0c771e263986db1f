mod common;

use std::collections::BTreeSet;

use common::{any_lot, injective_lot};
use lotcert_core::certify::{certify, check_certificate, Certificate, Intersection};
use lotcert_core::sublot::maximal_proper_sublots;
use lotcert_core::{Lot, SubLot};
use proptest::prelude::*;

fn pairwise_intersecting() -> Lot {
    Lot::from_names(
        &["a1", "a2", "a3", "c", "e", "d", "b1", "b2", "b3"],
        &[
            ["a1", "b1", "c"],
            ["a2", "b2", "c"],
            ["a3", "b3", "c"],
            ["c", "d", "e"],
            ["e", "c", "d"],
            ["d", "a1", "b1"],
            ["d", "a2", "b2"],
            ["d", "a3", "b3"],
        ],
    )
    .unwrap()
}

#[test]
fn intersecting_maximal_sublots() {
    let t = pairwise_intersecting();
    let mps = maximal_proper_sublots(&t);
    assert_eq!(mps.len(), 3);
    for (i, s) in mps.iter().enumerate() {
        let missing: BTreeSet<&str> =
            t.names().iter().map(String::as_str).filter(|n| !s.vertices.iter().any(|v| v == n)).collect();
        let k = 3 - i;
        assert_eq!(missing, [format!("a{k}"), format!("b{k}")].iter().map(String::as_str).collect());
        assert_eq!(s.edges.len(), 6);
        for other in &mps {
            assert!(s.shares_vertex(other));
        }
    }
}

#[test]
fn intersecting_case1() {
    let t = pairwise_intersecting();
    let c = certify(&t, &[]).unwrap();
    let Certificate::Case1 { ti, tj, tij, .. } = &c else { panic!("expected case 1, got {}", c.kind()) };
    assert!(ti.vertices.contains(&"a1".to_string()) && ti.vertices.contains(&"a2".to_string()));
    assert!(tj.vertices.contains(&"a3".to_string()));
    let Intersection::SubLot { sublot } = tij else { panic!("edge intersection expected") };
    assert_eq!(sublot.edges.len(), 4);
    check_certificate(&t, &c).unwrap();
}

#[test]
fn case1_with_foreign_intersection_rejected() {
    let t = pairwise_intersecting();
    let mut c = certify(&t, &[]).unwrap();
    let Certificate::Case1 { tij, .. } = &mut c else { unreachable!() };
    // [a1,b1,c] alone: label b1 lies outside the edge
    *tij = Intersection::SubLot { sublot: SubLot { edges: vec![0], vertices: vec!["a1".into(), "c".into()] } };
    let err = check_certificate(&t, &c).unwrap_err();
    assert_eq!(err.node, "case1");
}

/// Every descent is to a LOT with fewer vertices.
fn descends(t: &Lot, c: &Certificate) -> bool {
    match c {
        Certificate::SingleVertex { .. } | Certificate::Assumed { .. } => true,
        Certificate::Reduced { trace, inner } => {
            let r = lotcert_core::transform::replay(t, trace).unwrap();
            (trace.moves.is_empty() || r.vertex_count() < t.vertex_count()) && descends(&r, inner)
        }
        Certificate::Case1 { ti, tj, tij, cert_i, cert_j, cert_ij, .. } => {
            let (a, b, m) = (ti.to_lot(t), tj.to_lot(t), tij.to_lot(t));
            [&a, &b, &m].iter().all(|x| x.vertex_count() < t.vertex_count())
                && descends(&a, cert_i)
                && descends(&b, cert_j)
                && descends(&m, cert_ij)
        }
        Certificate::Case2 { sublots, subcerts, .. } => sublots.iter().zip(subcerts).all(|(s, sc)| {
            let x = s.to_lot(t);
            x.vertex_count() < t.vertex_count() && descends(&x, sc)
        }),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn injective_lots_certify(t in injective_lot(10)) {
        let c = certify(&t, &[]).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(check_certificate(&t, &c).is_ok());
        prop_assert!(descends(&t, &c));
    }

    #[test]
    fn certify_never_lies(t in any_lot(7)) {
        if let Ok(c) = certify(&t, &[]) {
            prop_assert!(check_certificate(&t, &c).is_ok());
        }
    }

    #[test]
    fn intersecting_maximal_sublots_cover(t in injective_lot(9)) {
        let (r, _) = lotcert_core::transform::reduce(&t);
        let mps = maximal_proper_sublots(&r);
        for (i, a) in mps.iter().enumerate() {
            for b in &mps[i + 1..] {
                if a.shares_vertex(b) {
                    let mut all: BTreeSet<usize> = a.edges.iter().copied().collect();
                    all.extend(&b.edges);
                    prop_assert_eq!(all.len(), r.edge_count());
                }
            }
        }
    }
}
