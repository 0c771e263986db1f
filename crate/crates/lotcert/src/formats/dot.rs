//! Graphviz export of Whitehead graphs.

use std::fmt::Write as _;

use lotcert_core::whitehead::{CollapsedGraph, Polarity, WgVertex, WhiteheadGraph};

/// Which part of the Whitehead graph to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    All,
    Side(Polarity),
}

impl View {
    fn shows(self, v: WgVertex) -> bool {
        match self {
            View::All => true,
            View::Side(p) => v.polarity == p,
        }
    }
}

/// Nodes are `x_plus` / `x_minus`; corners carry `relator` and `pos`;
/// each class of generator indices becomes a cluster.
pub fn whitehead(w: &WhiteheadGraph, view: View, classes: &[Vec<usize>]) -> String {
    let g = &w.generators;
    let mut out = String::from("graph whitehead {\n");
    for (k, class) in classes.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        let _ = writeln!(out, "    label=\"T{k}\";");
        for &gen in class {
            for v in [WgVertex::plus(gen), WgVertex::minus(gen)] {
                if view.shows(v) {
                    let _ = writeln!(out, "    {};", v.name(g));
                }
            }
        }
        out.push_str("  }\n");
    }
    for v in w.vertices() {
        if view.shows(v) && !classes.iter().any(|c| c.contains(&v.generator)) {
            let _ = writeln!(out, "  {};", v.name(g));
        }
    }
    for c in &w.corners {
        let [a, b] = c.ends;
        if view.shows(a) && view.shows(b) {
            let _ = writeln!(
                out,
                "  {} -- {} [relator={}, pos={}, label=\"r{}:{}\"];",
                a.name(g),
                b.name(g),
                c.relator,
                c.pos,
                c.relator,
                c.pos
            );
        }
    }
    out.push_str("}\n");
    out
}

/// A collapsed one-sided graph; node labels list the generators they hold.
pub fn collapsed(c: &CollapsedGraph, w: &WhiteheadGraph, polarity: Polarity) -> String {
    let mut out = String::from("graph collapsed {\n");
    for (k, members) in c.nodes.iter().enumerate() {
        let names: Vec<String> =
            members.iter().map(|&g| WgVertex { generator: g, polarity }.name(&w.generators)).collect();
        let _ = writeln!(out, "  n{k} [label=\"{}\"];", names.join(" "));
    }
    let sided: Vec<_> = w.corners.iter().filter(|c| c.polarity() == Some(polarity)).collect();
    for e in &c.edges {
        let corner = sided[e.source];
        let _ = writeln!(
            out,
            "  n{} -- n{} [relator={}, pos={}];",
            e.ends[0], e.ends[1], corner.relator, corner.pos
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lotcert_core::whitehead::{collapse_classes, whitehead_graph};
    use lotcert_core::{Log, Presentation};

    #[test]
    fn names_and_annotations() {
        let g = Log::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "a", "c"]]).unwrap();
        let w = whitehead_graph(&Presentation::of_log(&g)).unwrap();
        let dot = whitehead(&w, View::All, &[]);
        assert!(dot.contains("  a_minus -- c_plus [relator=0, pos=0"));
        assert_eq!(dot.matches(" -- ").count(), 8);
        let plus = whitehead(&w, View::Side(Polarity::Plus), &[vec![0, 1]]);
        assert!(plus.contains("subgraph cluster_0"));
        assert!(!plus.contains("minus"));
        assert_eq!(plus.matches(" -- ").count(), 2);
        let c = collapse_classes(&w.restrict(Polarity::Plus), &[vec![0, 1]]).unwrap();
        let dot = collapsed(&c, &w, Polarity::Plus);
        assert!(dot.contains("n0 [label=\"a_plus b_plus\"]"));
    }
}
