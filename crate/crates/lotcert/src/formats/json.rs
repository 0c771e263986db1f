//! JSON documents. Every document carries `"schema": "lotcert/1"`.

use anyhow::{bail, Context};
use lotcert_core::certify::{Assumption, Certificate};
use lotcert_core::{Edge, Log, SubLot};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "lotcert/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub label: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

impl LogJson {
    pub fn of(g: &Log) -> Self {
        let edges = (0..g.edge_count())
            .map(|id| {
                let [from, label, to] = g.edge_names(id).map(String::from);
                EdgeJson { from, label, to }
            })
            .collect();
        LogJson { vertices: g.names().to_vec(), edges }
    }

    pub fn to_log(&self) -> anyhow::Result<Log> {
        let index = |n: &str| {
            self.vertices.iter().position(|v| v == n).with_context(|| format!("undeclared vertex {n:?}"))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(Edge::new(index(&e.from)?, index(&e.label)?, index(&e.to)?)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Log::new(self.vertices.clone(), edges)?)
    }
}

/// `value` as a JSON object with the schema tag in front.
pub fn tagged<T: Serialize>(value: &T) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    match serde_json::to_value(value).expect("documents serialize") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Rejects documents tagged with another schema; untagged input is accepted.
pub fn check_schema(v: &Value) -> anyhow::Result<()> {
    match v.get("schema") {
        None => Ok(()),
        Some(Value::String(s)) if s == SCHEMA => Ok(()),
        Some(other) => bail!("unsupported schema {other}"),
    }
}

pub fn parse_log(text: &str) -> anyhow::Result<Log> {
    let v: Value = serde_json::from_str(text)?;
    check_schema(&v)?;
    let j: LogJson = serde_json::from_value(v)?;
    j.to_log()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubLotJson {
    pub edges: Vec<usize>,
    pub vertices: Vec<String>,
    pub triples: Vec<[String; 3]>,
}

impl SubLotJson {
    pub fn of(s: &SubLot, g: &Log) -> Self {
        SubLotJson { edges: s.edges.clone(), vertices: s.vertices.clone(), triples: s.edge_triples(g) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub lot: LogJson,
    pub certificate: Certificate,
}

pub fn parse_certificate(text: &str) -> anyhow::Result<CertificateDoc> {
    let v: Value = serde_json::from_str(text)?;
    check_schema(&v)?;
    Ok(serde_json::from_value(v)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AssumptionFile {
    Doc { assumptions: Vec<Assumption> },
    List(Vec<Assumption>),
    One(Assumption),
}

/// Assumptions given as `{"assumptions": [...]}`, a bare list, or one object.
pub fn parse_assumptions(text: &str) -> anyhow::Result<Vec<Assumption>> {
    let v: Value = serde_json::from_str(text)?;
    if v.is_object() {
        check_schema(&v)?;
    }
    Ok(match serde_json::from_value(v).context("not an assumption document")? {
        AssumptionFile::Doc { assumptions } | AssumptionFile::List(assumptions) => assumptions,
        AssumptionFile::One(a) => vec![a],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lotcert_core::certify::AssumptionKind;

    #[test]
    fn log_round_trip() {
        let g = Log::from_names(&["a", "b", "c"], &[["a", "c", "b"], ["b", "a", "c"]]).unwrap();
        let text = pretty(&tagged(&LogJson::of(&g)));
        assert!(text.starts_with("{\n  \"schema\": \"lotcert/1\""));
        assert_eq!(parse_log(&text).unwrap(), g);
        assert!(parse_log(r#"{"schema":"other/2","vertices":[],"edges":[]}"#).is_err());
        assert!(parse_log(r#"{"vertices":["a"],"edges":[{"from":"a","label":"q","to":"a"}]}"#).is_err());
    }

    #[test]
    fn assumption_shapes() {
        let one = r#"{"edges":[["a","b","c"]],"reason":"small cancellation"}"#;
        let a = parse_assumptions(one).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].kind, AssumptionKind::Aspherical);
        let doc = r#"{"schema":"lotcert/1","assumptions":[{"kind":"pi1_injective","edges":[],"into":[]}]}"#;
        assert_eq!(parse_assumptions(doc).unwrap()[0].kind, AssumptionKind::Pi1Injective);
        assert_eq!(parse_assumptions("[]").unwrap().len(), 0);
    }
}
