//! Human-readable summaries for the command line.

use std::fmt::Write as _;

use lotcert_core::certify::{Certificate, Intersection};
use lotcert_core::transform::{Move, ReductionTrace};
use lotcert_core::whitehead::{ForestCheck, StallingsReport};

fn side(c: &ForestCheck) -> String {
    match (c.forest, c.connected) {
        (true, true) => "tree".into(),
        (true, false) => format!("forest ({} components)", c.components),
        (false, _) => "not a forest".into(),
    }
}

/// `pass (+ side: tree; − side: tree)` and the like.
pub fn stallings_line(r: &StallingsReport) -> String {
    let verdict = if r.passed() { "pass" } else { "fail" };
    let sums = if r.exponent_sums_ok { "" } else { "exponent sums nonzero; " };
    format!("{verdict} ({sums}+ side: {}; − side: {})", side(&r.plus), side(&r.minus))
}

fn names(vs: &[String]) -> String {
    format!("{{{}}}", vs.join(","))
}

pub fn describe_move(m: &Move) -> String {
    match m {
        Move::Compress { edge, kept, merged } => format!("compress edge {edge}: merge {merged} into {kept}"),
        Move::BoundaryReduce { edge, removed } => format!("boundary-reduce edge {edge}: remove {removed}"),
        Move::Fold { edges, kept, merged } => {
            format!("fold edges {} and {}: merge {merged} into {kept}", edges[0], edges[1])
        }
    }
}

pub fn trace_lines(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for (k, m) in trace.moves.iter().enumerate() {
        let _ = writeln!(out, "{}. {}", k + 1, describe_move(m));
    }
    out
}

/// Indented tree of certificate nodes.
pub fn outline(c: &Certificate) -> String {
    let mut out = String::new();
    walk(c, 0, &mut out);
    out
}

fn walk(c: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match c {
        Certificate::SingleVertex { vertex } => {
            let _ = writeln!(out, "{pad}single vertex {vertex}");
        }
        Certificate::Reduced { trace, inner } => {
            let _ = writeln!(out, "{pad}reduced by {} move(s)", trace.moves.len());
            walk(inner, depth + 1, out);
        }
        Certificate::Case1 { ti, tj, tij, cert_i, cert_j, cert_ij, attested } => {
            let meet = match tij {
                Intersection::SubLot { sublot } => names(&sublot.vertices),
                Intersection::Vertex { vertex } => format!("vertex {vertex}"),
            };
            let _ = writeln!(out, "{pad}case 1: {} and {} meet in {meet}", names(&ti.vertices), names(&tj.vertices));
            for a in attested {
                let _ = writeln!(out, "{pad}  attested: {}", a.reason);
            }
            for sub in [cert_i, cert_j, cert_ij] {
                walk(sub, depth + 1, out);
            }
        }
        Certificate::Case2 { sublots, flips, inverted, report, subcerts } => {
            let classes: Vec<String> = sublots.iter().map(|s| names(&s.vertices)).collect();
            let _ = writeln!(
                out,
                "{pad}case 2: collapse [{}], flip edges {:?} (invert {}), {}",
                classes.join(" "),
                flips,
                names(inverted),
                stallings_line(report)
            );
            for sub in subcerts {
                walk(sub, depth + 1, out);
            }
        }
        Certificate::Assumed { assumption } => {
            let _ = writeln!(out, "{pad}assumed: {}", assumption.reason);
        }
    }
}
