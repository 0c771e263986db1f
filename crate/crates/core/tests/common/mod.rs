#![allow(dead_code)]

use lotcert_core::{Edge, Log, Lot};
use proptest::prelude::*;

pub fn prufer(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn build(n: usize, seq: &[usize], labels: &[usize], flips: &[bool]) -> Lot {
    let names = (0..n).map(|k| format!("v{k}")).collect();
    let edges = prufer(n, seq)
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| if flips[k] { Edge::new(b, labels[k], a) } else { Edge::new(a, labels[k], b) })
        .collect();
    Lot::new(Log::new(names, edges).unwrap()).unwrap()
}

/// Any LOT on up to `max` vertices, labels drawn with repetition.
pub fn any_lot(max: usize) -> impl Strategy<Value = Lot> {
    (1..=max).prop_flat_map(|n| {
        let m = n.saturating_sub(1);
        (
            Just(n),
            proptest::collection::vec(0..n, n.saturating_sub(2)),
            proptest::collection::vec(0..n, m),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(|(n, seq, labels, flips)| build(n, &seq, &labels, &flips))
    })
}

/// Injective LOTs: labels are a random injection of edges into vertices.
pub fn injective_lot(max: usize) -> impl Strategy<Value = Lot> {
    (1..=max).prop_flat_map(|n| {
        let m = n.saturating_sub(1);
        (
            Just(n),
            proptest::collection::vec(0..n, n.saturating_sub(2)),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(|(n, seq, labels, flips)| build(n, &seq, &labels, &flips))
    })
}

pub fn triples(t: &Log) -> Vec<[String; 3]> {
    (0..t.edge_count()).map(|id| t.edge_names(id).map(String::from)).collect()
}
