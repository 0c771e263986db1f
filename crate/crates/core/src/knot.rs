//! Gauss codes of long virtual knot diagrams and their Wirtinger LOIs.
//!
//! A code lists the classical crossings met while travelling from one end
//! of the long knot to the other, as tokens `O<id><sign>` (over) or
//! `U<id><sign>` (under). Arcs run between consecutive under-passages and
//! are numbered `0..=n` in traversal order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::lot::{Edge, Log, Lot};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PassageKind {
    Over,
    Under,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: String,
    pub kind: PassageKind,
    pub positive: bool,
}

impl Passage {
    pub fn token(&self) -> String {
        let k = match self.kind {
            PassageKind::Over => 'O',
            PassageKind::Under => 'U',
        };
        format!("{k}{}{}", self.crossing, if self.positive { '+' } else { '-' })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussCode {
    pub passages: Vec<Passage>,
}

fn parse_token(tok: &str) -> Result<Passage> {
    let bad = || Error::InvalidGauss(format!("bad token {tok:?}"));
    let mut chars = tok.chars();
    let kind = match chars.next() {
        Some('O') => PassageKind::Over,
        Some('U') => PassageKind::Under,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let (id, positive) = match rest.chars().last() {
        Some('+') => (&rest[..rest.len() - 1], true),
        Some('-') => (&rest[..rest.len() - 1], false),
        _ => return Err(bad()),
    };
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad());
    }
    Ok(Passage { crossing: id.to_string(), kind, positive })
}

pub fn parse_gauss(text: &str) -> Result<GaussCode> {
    let passages = text.split_whitespace().map(parse_token).collect::<Result<Vec<_>>>()?;
    GaussCode::new(passages)
}

impl GaussCode {
    /// Checks that each crossing occurs exactly twice, once over and once
    /// under, with one sign.
    pub fn new(passages: Vec<Passage>) -> Result<Self> {
        let mut seen: BTreeMap<&str, &Passage> = BTreeMap::new();
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        for p in &passages {
            let c = count.entry(&p.crossing).or_insert(0);
            *c += 1;
            if *c > 2 {
                return Err(Error::InvalidGauss(format!("crossing {} occurs more than twice", p.crossing)));
            }
            if let Some(first) = seen.get(p.crossing.as_str()) {
                if first.kind == p.kind {
                    return Err(Error::InvalidGauss(format!("crossing {} is passed {} twice", p.crossing, kind_word(p.kind))));
                }
                if first.positive != p.positive {
                    return Err(Error::InvalidGauss(format!("sign mismatch at crossing {}", p.crossing)));
                }
            } else {
                seen.insert(&p.crossing, p);
            }
        }
        if let Some((c, _)) = count.iter().find(|(_, &n)| n == 1) {
            return Err(Error::InvalidGauss(format!("unmatched crossing {c}")));
        }
        Ok(GaussCode { passages })
    }

    pub fn crossings(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn render(&self) -> String {
        let tokens: Vec<String> = self.passages.iter().map(Passage::token).collect();
        tokens.join(" ")
    }
}

fn kind_word(k: PassageKind) -> &'static str {
    match k {
        PassageKind::Over => "over",
        PassageKind::Under => "under",
    }
}

pub fn is_alternating(g: &GaussCode) -> bool {
    g.passages.windows(2).all(|w| w[0].kind != w[1].kind)
}

/// The labeled oriented interval of the Wirtinger presentation, with arcs
/// named `<prefix>0..<prefix>n`. Crossing `c` with incoming under arc `x`,
/// outgoing under arc `y` and over arc `z` gives `[x,z,y]` when positive and
/// `[y,z,x]` when negative; edges are listed in order of first appearance.
pub fn loi_of(g: &GaussCode, prefix: &str) -> Result<Lot> {
    let n = g.crossings();
    let names: Vec<String> = (0..=n).map(|k| format!("{prefix}{k}")).collect();
    let mut under_arc: BTreeMap<&str, usize> = BTreeMap::new();
    let mut over_arc: BTreeMap<&str, usize> = BTreeMap::new();
    let mut order: Vec<(&str, bool)> = Vec::new();
    let mut arc = 0;
    for p in &g.passages {
        if !under_arc.contains_key(p.crossing.as_str()) && !over_arc.contains_key(p.crossing.as_str()) {
            order.push((&p.crossing, p.positive));
        }
        match p.kind {
            PassageKind::Under => {
                under_arc.insert(&p.crossing, arc);
                arc += 1;
            }
            PassageKind::Over => {
                over_arc.insert(&p.crossing, arc);
            }
        }
    }
    let edges = order
        .iter()
        .map(|&(c, positive)| {
            let x = *under_arc.get(c).ok_or_else(|| Error::InvalidGauss(format!("crossing {c} has no under-passage")))?;
            let z = *over_arc.get(c).ok_or_else(|| Error::InvalidGauss(format!("crossing {c} has no over-passage")))?;
            let y = x + 1;
            Ok(if positive { Edge::new(x, z, y) } else { Edge::new(y, z, x) })
        })
        .collect::<Result<Vec<_>>>()?;
    Lot::new(Log::new(names, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cases() {
        let g = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(g.crossings(), 3);
        assert_eq!(g.passages.len(), 6);
        assert_eq!(g.render(), "O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(parse_gauss("").unwrap(), GaussCode::default());
        assert!(matches!(parse_gauss("O1+ U1-"), Err(Error::InvalidGauss(m)) if m.contains("sign mismatch")));
        assert!(parse_gauss("O1+").is_err());
        assert!(parse_gauss("O1+ O1+").is_err());
        assert!(parse_gauss("O1+ U1+ O1+").is_err());
        assert!(parse_gauss("X1+").is_err());
        assert!(parse_gauss("O1").is_err());
    }

    #[test]
    fn alternation() {
        assert!(is_alternating(&parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap()));
        assert!(!is_alternating(&parse_gauss("O1+ O2+ U1+ U2+").unwrap()));
        assert!(is_alternating(&GaussCode::default()));
    }

    #[test]
    fn trefoil_pattern() {
        let t = loi_of(&parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap(), "x").unwrap();
        assert_eq!(t.vertex_count(), 4);
        let edges: Vec<String> = (0..t.edge_count()).map(|id| t.describe_edge(id)).collect();
        assert_eq!(edges, ["[x1,x0,x2]", "[x0,x2,x1]", "[x2,x1,x3]"]);
        assert!(t.is_injective());
    }

    #[test]
    fn small_codes() {
        let t = loi_of(&GaussCode::default(), "x").unwrap();
        assert_eq!(t.vertex_count(), 1);
        let t = loi_of(&parse_gauss("O1+ U1+").unwrap(), "x").unwrap();
        assert_eq!(t.describe_edge(0), "[x0,x0,x1]");
        assert!(!t.is_compressed());
        let t = loi_of(&parse_gauss("U1- O1-").unwrap(), "k").unwrap();
        assert_eq!(t.describe_edge(0), "[k1,k1,k0]");
    }
}
