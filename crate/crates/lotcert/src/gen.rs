//! Instance generators: labeled oriented trees, Gauss codes and spherical
//! diagrams. Everything is deterministic given the RNG state.

use std::collections::BTreeSet;

use lotcert_core::diagram::{DiagramEdge, Direction, SphericalDiagram, Step};
use lotcert_core::knot::{GaussCode, Passage, PassageKind};
use lotcert_core::presentation::{Letter, Relator, Word};
use lotcert_core::{Edge, Log, Lot, Presentation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("v{k}")).collect()
}

/// Tree on `0..n` with the given Prüfer sequence (`n >= 2`).
pub fn prufer_tree(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Canonical string of the unrooted tree: the smaller AHU code over its
/// centers.
fn canonical_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn code(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| code(w, v, adj)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    centers(n, &adj).into_iter().map(|c| code(c, usize::MAX, &adj)).min().expect("trees have a center")
}

fn centers(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// One representative edge list per isomorphism class of trees on `n`
/// vertices.
pub fn tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0; n - 2];
    loop {
        let t = prufer_tree(n, &seq);
        if seen.insert(canonical_form(n, &t)) {
            out.push(t);
        }
        let mut k = 0;
        while k < seq.len() && seq[k] == n - 1 {
            seq[k] = 0;
            k += 1;
        }
        if k == seq.len() {
            break;
        }
        seq[k] += 1;
    }
    out
}

/// Every injective labeling and orientation of every tree shape on `n`
/// vertices, in a fixed order.
pub fn injective_lots(n: usize) -> Vec<Lot> {
    let names = vertex_names(n);
    let mut out = Vec::new();
    for shape in tree_shapes(n) {
        let m = shape.len();
        let mut labels = Vec::with_capacity(m);
        injective_labelings(n, m, &mut labels, &mut |labels| {
            for mask in 0u32..(1 << m) {
                let edges = shape
                    .iter()
                    .zip(labels)
                    .enumerate()
                    .map(|(k, (&(a, b), &z))| if mask >> k & 1 == 1 { Edge::new(b, z, a) } else { Edge::new(a, z, b) })
                    .collect();
                out.push(Lot::new(Log::new(names.clone(), edges).expect("valid names")).expect("shapes are trees"));
            }
        });
    }
    out
}

/// Every labeling (repetition allowed) and orientation of every tree shape
/// on `n` vertices.
pub fn all_lots(n: usize) -> Vec<Lot> {
    let names = vertex_names(n);
    let mut out = Vec::new();
    for shape in tree_shapes(n) {
        let m = shape.len();
        for code in 0..n.pow(m as u32) {
            let labels: Vec<usize> = (0..m).map(|k| code / n.pow(k as u32) % n).collect();
            for mask in 0u32..(1 << m) {
                let edges = shape
                    .iter()
                    .zip(&labels)
                    .enumerate()
                    .map(|(k, (&(a, b), &z))| if mask >> k & 1 == 1 { Edge::new(b, z, a) } else { Edge::new(a, z, b) })
                    .collect();
                out.push(Lot::new(Log::new(names.clone(), edges).expect("valid names")).expect("shapes are trees"));
            }
        }
    }
    out
}

fn injective_labelings(n: usize, m: usize, labels: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if labels.len() == m {
        f(labels);
        return;
    }
    for z in 0..n {
        if !labels.contains(&z) {
            labels.push(z);
            injective_labelings(n, m, labels, f);
            labels.pop();
        }
    }
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_tree(n, &seq)
        }
    }
}

fn orient_and_label<R: Rng>(rng: &mut R, shape: &[(usize, usize)], labels: &[usize], n: usize) -> Lot {
    let edges = shape
        .iter()
        .zip(labels)
        .map(|(&(a, b), &z)| if rng.gen_bool(0.5) { Edge::new(b, z, a) } else { Edge::new(a, z, b) })
        .collect();
    Lot::new(Log::new(vertex_names(n), edges).expect("valid names")).expect("random trees are trees")
}

pub fn random_injective_lot<R: Rng>(rng: &mut R, n: usize) -> Lot {
    let shape = random_tree(rng, n);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    orient_and_label(rng, &shape, &labels[..shape.len()], n)
}

/// Labels drawn with repetition.
pub fn random_lot<R: Rng>(rng: &mut R, n: usize) -> Lot {
    let shape = random_tree(rng, n);
    let labels: Vec<usize> = (0..shape.len()).map(|_| rng.gen_range(0..n)).collect();
    orient_and_label(rng, &shape, &labels, n)
}

/// Crossings renamed `1, 2, ...` in order of first appearance.
pub fn canonical_gauss(g: &GaussCode) -> GaussCode {
    let mut order: Vec<&str> = Vec::new();
    for p in &g.passages {
        if !order.contains(&p.crossing.as_str()) {
            order.push(&p.crossing);
        }
    }
    let passages = g
        .passages
        .iter()
        .map(|p| {
            let k = order.iter().position(|c| *c == p.crossing).expect("seen") + 1;
            Passage { crossing: k.to_string(), ..p.clone() }
        })
        .collect();
    GaussCode { passages }
}

fn alternating_code(n: usize, over_first: bool, perm: &[usize], signs: u32) -> GaussCode {
    // odd/even slots carry the two kinds; crossing k takes the k-th slot of
    // the first kind and slot perm[k] of the second
    let (first, second) = if over_first { (PassageKind::Over, PassageKind::Under) } else { (PassageKind::Under, PassageKind::Over) };
    let mut slots: Vec<Option<Passage>> = vec![None; 2 * n];
    for k in 0..n {
        let positive = signs >> k & 1 == 0;
        let id = (k + 1).to_string();
        slots[2 * k] = Some(Passage { crossing: id.clone(), kind: first, positive });
        slots[2 * perm[k] + 1] = Some(Passage { crossing: id, kind: second, positive });
    }
    let passages = slots.into_iter().map(|p| p.expect("all slots filled")).collect();
    canonical_gauss(&GaussCode::new(passages).expect("alternating codes are valid"))
}

/// All alternating codes with `n` crossings, up to renaming crossings.
pub fn alternating_codes(n: usize) -> Vec<GaussCode> {
    if n == 0 {
        return vec![GaussCode::default()];
    }
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |perm| {
        for over_first in [true, false] {
            for signs in 0..(1u32 << n) {
                out.insert(alternating_code(n, over_first, perm, signs).render());
            }
        }
    });
    out.into_iter().map(|s| lotcert_core::knot::parse_gauss(&s).expect("rendered codes parse")).collect()
}

fn permutations(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

pub fn random_alternating_code<R: Rng>(rng: &mut R, n: usize) -> GaussCode {
    if n == 0 {
        return GaussCode::default();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs = rng.gen_range(0..(1u32 << n));
    alternating_code(n, rng.gen_bool(0.5), &perm, signs)
}

fn grow<R: Rng>(rng: &mut R, steps: usize, loops: bool) -> SphereBuilder {
    let mut m = SphereBuilder::digon();
    for _ in 0..steps {
        if rng.gen_bool(0.4) {
            m.subdivide(rng.gen_range(0..m.edges.len()));
        } else {
            let f = rng.gen_range(0..m.faces.len());
            let len = m.faces[f].len();
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            let (a, b) = (m.start(m.faces[f][i]), m.start(m.faces[f][j]));
            if len >= 2 && (loops || a != b) {
                m.split(f, i, j);
            }
        }
    }
    m
}

/// A sphere grown from a digon by subdividing edges and splitting faces
/// along chords (possibly loops). Edge orientations are random; labels are
/// `x<k>` per edge and the accompanying presentation has one relator per
/// face word.
pub fn random_sphere<R: Rng>(rng: &mut R, steps: usize) -> (SphericalDiagram, Presentation) {
    let m = grow(rng, steps, true);
    let orient: Vec<bool> = (0..m.edges.len()).map(|_| rng.gen_bool(0.5)).collect();
    m.finish(&orient, |k| format!("x{k}"))
}

/// Loop-free sphere with edges pointing up a random height function, so
/// the lowest vertex is a source and the highest a sink.
pub fn random_height_sphere<R: Rng>(rng: &mut R, steps: usize) -> (SphericalDiagram, Presentation) {
    let m = grow(rng, steps, false);
    let mut heights: Vec<usize> = (0..m.vertices).collect();
    heights.shuffle(rng);
    let orient: Vec<bool> = m.edges.iter().map(|&(a, b)| heights[a] > heights[b]).collect();
    m.finish(&orient, |k| format!("x{k}"))
}

/// Same sphere with edge `k` reversed when `flip[k]`, relabeled and with a
/// fresh face presentation.
pub fn reorient_sphere(d: &SphericalDiagram, flip: &[bool]) -> (SphericalDiagram, Presentation) {
    let m = SphereBuilder::from_diagram(d);
    let orient: Vec<bool> = d.edges.iter().zip(flip).map(|(_, &f)| f).collect();
    m.finish(&orient, |k| format!("x{k}"))
}

/// Searches orientations of `d` in which every face has exponent sum zero.
pub fn zero_sum_orientation<R: Rng>(rng: &mut R, d: &SphericalDiagram, budget: usize) -> Option<Vec<bool>> {
    let m = SphereBuilder::from_diagram(d);
    let mut choice: Vec<Option<bool>> = vec![None; m.edges.len()];
    let mut order: Vec<usize> = (0..m.edges.len()).collect();
    order.shuffle(rng);
    let mut budget = budget;
    if zero_sum_search(&m, &order, 0, &mut choice, &mut budget, rng) {
        Some(choice.into_iter().map(|c| c.expect("assigned")).collect())
    } else {
        None
    }
}

fn zero_sum_search<R: Rng>(
    m: &SphereBuilder,
    order: &[usize],
    k: usize,
    choice: &mut Vec<Option<bool>>,
    budget: &mut usize,
    rng: &mut R,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if k == order.len() {
        return true;
    }
    let e = order[k];
    let first = rng.gen_bool(0.5);
    for flip in [first, !first] {
        choice[e] = Some(flip);
        if m.faces.iter().all(|f| face_can_balance(f, choice)) && zero_sum_search(m, order, k + 1, choice, budget, rng) {
            return true;
        }
    }
    choice[e] = None;
    false
}

fn face_can_balance(face: &[(usize, bool)], choice: &[Option<bool>]) -> bool {
    let (mut along, mut against, mut free) = (0usize, 0usize, 0usize);
    for &(e, forward) in face {
        match choice[e] {
            None => free += 1,
            Some(flip) => {
                if forward != flip {
                    along += 1
                } else {
                    against += 1
                }
            }
        }
    }
    let n = face.len();
    n.is_multiple_of(2) && along <= n / 2 && against <= n / 2 && along + against + free == n
}

/// Spheres as half-edge walks: faces list `(edge, forward)` where forward
/// means the walk goes from `edges[e].0` to `edges[e].1`.
#[derive(Debug, Clone)]
struct SphereBuilder {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<(usize, bool)>>,
}

impl SphereBuilder {
    fn digon() -> Self {
        SphereBuilder { vertices: 2, edges: vec![(0, 1), (1, 0)], faces: vec![vec![(0, true), (1, true)], vec![(1, false), (0, false)]] }
    }

    fn from_diagram(d: &SphericalDiagram) -> Self {
        SphereBuilder {
            vertices: d.vertices.len(),
            edges: d.edges.iter().map(|e| (e.tail, e.head)).collect(),
            faces: d
                .faces
                .iter()
                .map(|f| f.iter().map(|s| (s.edge, s.direction == Direction::Along)).collect())
                .collect(),
        }
    }

    fn start(&self, (e, fwd): (usize, bool)) -> usize {
        if fwd {
            self.edges[e].0
        } else {
            self.edges[e].1
        }
    }

    /// Inserts a vertex in the middle of edge `e`.
    fn subdivide(&mut self, e: usize) {
        let (a, b) = self.edges[e];
        let v = self.vertices;
        self.vertices += 1;
        let e2 = self.edges.len();
        self.edges[e] = (a, v);
        self.edges.push((v, b));
        for f in &mut self.faces {
            let mut out = Vec::with_capacity(f.len() + 1);
            for &(x, fwd) in f.iter() {
                if x != e {
                    out.push((x, fwd));
                } else if fwd {
                    out.push((e, true));
                    out.push((e2, true));
                } else {
                    out.push((e2, false));
                    out.push((e, false));
                }
            }
            *f = out;
        }
    }

    /// Splits face `f` by a chord between the start vertices of steps `i`
    /// and `j`. A chord from a corner to itself cuts off a loop face.
    fn split(&mut self, f: usize, i: usize, j: usize) {
        let face = self.faces[f].clone();
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let (a, b) = (self.start(face[i]), self.start(face[j]));
        let e = self.edges.len();
        self.edges.push((a, b));
        // the part from i to j closes with the chord back b -> a
        let mut one: Vec<(usize, bool)> = face[i..j].to_vec();
        one.push((e, false));
        let mut two: Vec<(usize, bool)> = face[j..].iter().chain(&face[..i]).copied().collect();
        two.push((e, true));
        if i == j {
            one = vec![(e, false)];
            two = face.iter().skip(i).chain(face.iter().take(i)).copied().collect();
            two.push((e, true));
        }
        self.faces[f] = one;
        self.faces.push(two);
    }

    fn finish(&self, flip: &[bool], label: impl Fn(usize) -> String) -> (SphericalDiagram, Presentation) {
        let edges: Vec<DiagramEdge> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let (tail, head) = if flip[k] { (b, a) } else { (a, b) };
                DiagramEdge { label: label(k), tail, head }
            })
            .collect();
        let faces: Vec<Vec<Step>> = self
            .faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&(e, fwd)| Step { edge: e, direction: if fwd != flip[e] { Direction::Along } else { Direction::Against } })
                    .collect()
            })
            .collect();
        let gens: Vec<String> = (0..self.edges.len()).map(&label).collect();
        let relators = faces
            .iter()
            .enumerate()
            .map(|(id, f)| Relator {
                id,
                word: f.iter().map(|s| Letter { generator: s.edge, inverse: s.direction == Direction::Against }).collect::<Word>(),
            })
            .collect();
        let p = Presentation::new(gens, relators).expect("face letters are generators");
        let names = (0..self.vertices).map(|k| format!("v{k}")).collect();
        let d = SphericalDiagram::from_faces(names, edges, faces).expect("builder keeps faces consistent");
        (d, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lotcert_core::diagram::orientation_census;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shape_counts() {
        // unlabeled trees on n vertices: 1, 1, 1, 2, 3, 6, 11
        let counts: Vec<usize> = (1..=7).map(|n| tree_shapes(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn injective_counts() {
        assert_eq!(injective_lots(1).len(), 1);
        // one shape, 2 * 1 labelings, 2 orientations
        assert_eq!(injective_lots(2).len(), 4);
        assert!(injective_lots(4).iter().all(|t| t.is_injective()));
        // 3 labels on 2 edges, 4 orientations
        assert_eq!(all_lots(3).len(), 36);
    }

    #[test]
    fn alternating_code_counts() {
        for n in 0..=3 {
            let codes = alternating_codes(n);
            assert!(codes.iter().all(|g| lotcert_core::knot::is_alternating(g) && g.crossings() == n));
        }
        // O1 U1 / U1 O1, two signs each
        assert_eq!(alternating_codes(1).len(), 4);
    }

    #[test]
    fn spheres_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for steps in 0..30 {
            let (d, p) = random_sphere(&mut rng, steps);
            let r = d.validate(&p);
            assert!(r.is_valid(), "steps {steps}: {:?}", r.violations);
            let (h, q) = random_height_sphere(&mut rng, steps);
            assert!(h.validate(&q).is_valid());
            let c = orientation_census(&h);
            assert!(!c.sinks.is_empty() && !c.sources.is_empty());
        }
    }
}
