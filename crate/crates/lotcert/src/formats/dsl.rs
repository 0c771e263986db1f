//! Line-oriented text format for labeled oriented graphs.
//!
//! ```text
//! # comment
//! vertices a b c
//! edge a c b      # from, label, to
//! edge b a c
//! ```
//!
//! `vertices` lines may repeat; edges may only use declared vertices.

use std::fmt::Write as _;

use lotcert_core::{Edge, Log};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Splits a line into tokens with their 1-based columns, dropping comments.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &code[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &code[s..]));
    }
    out
}

pub fn parse(text: &str) -> Result<Log, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else { continue };
        match keyword {
            "vertices" => {
                for &(c, name) in &toks[1..] {
                    if !lotcert_core::lot::is_token(name) {
                        return Err(err(ln, c, format!("invalid vertex id {name:?}")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(err(ln, c, format!("duplicate vertex {name:?}")));
                    }
                    names.push(name.to_string());
                }
            }
            "edge" => {
                if toks.len() != 4 {
                    let c = toks.get(4).map_or(col + line[col - 1..].trim_end().len(), |t| t.0);
                    return Err(err(ln, c, "expected `edge <from> <label> <to>`"));
                }
                let mut ends = [0; 3];
                for (slot, &(c, name)) in ends.iter_mut().zip(&toks[1..]) {
                    *slot = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| err(ln, c, format!("undeclared vertex {name:?}")))?;
                }
                edges.push(Edge::new(ends[0], ends[1], ends[2]));
            }
            other => return Err(err(ln, col, format!("unknown keyword {other:?}"))),
        }
    }
    Log::new(names, edges).map_err(|e| err(0, 0, e.to_string()))
}

/// Canonical text: one `vertices` line, then one `edge` line per edge.
pub fn render(g: &Log) -> String {
    let mut out = String::from("vertices");
    for n in g.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for id in 0..g.edge_count() {
        let [f, l, t] = g.edge_names(id);
        let _ = writeln!(out, "edge {f} {l} {t}");
    }
    out
}
