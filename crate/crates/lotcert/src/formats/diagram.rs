//! Diagram JSON.
//!
//! ```json
//! {"edges": [{"id": "e0", "label": "a", "tail": "v0", "head": "v1"}],
//!  "faces": [[["e0", "along"], ["e1", "against"]]],
//!  "rotation": {"v0": ["e0t", "e1h"]}}
//! ```
//!
//! Edge ids default to `e<k>`; vertices default to the endpoints in order
//! of first use. A missing rotation is derived from the faces.

use std::collections::BTreeMap;

use anyhow::{bail, Context};
use lotcert_core::diagram::{DiagramEdge, Direction, EdgeEnd, End, SphericalDiagram, Step};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::json::check_schema;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    label: String,
    tail: String,
    head: String,
}

#[derive(Debug, Clone, Deserialize)]
struct DiagramJson {
    #[serde(default)]
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    faces: Vec<Vec<(String, Direction)>>,
    #[serde(default)]
    rotation: Option<BTreeMap<String, Vec<String>>>,
}

pub fn parse(text: &str) -> anyhow::Result<SphericalDiagram> {
    let v: Value = serde_json::from_str(text)?;
    check_schema(&v)?;
    let j: DiagramJson = serde_json::from_value(v)?;
    let mut vertices = j.vertices.clone();
    for e in &j.edges {
        for v in [&e.tail, &e.head] {
            if !vertices.contains(v) {
                if !j.vertices.is_empty() {
                    bail!("edge endpoint {v:?} is not a listed vertex");
                }
                vertices.push(v.clone());
            }
        }
    }
    let vindex = |n: &str| vertices.iter().position(|v| v == n).with_context(|| format!("unknown vertex {n:?}"));
    let ids: Vec<String> =
        j.edges.iter().enumerate().map(|(k, e)| e.id.clone().unwrap_or_else(|| format!("e{k}"))).collect();
    let eindex = |n: &str| ids.iter().position(|v| v == n).with_context(|| format!("unknown edge {n:?}"));
    let edges = j
        .edges
        .iter()
        .map(|e| Ok(DiagramEdge { label: e.label.clone(), tail: vindex(&e.tail)?, head: vindex(&e.head)? }))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let faces = j
        .faces
        .iter()
        .map(|f| f.iter().map(|(e, d)| Ok(Step { edge: eindex(e)?, direction: *d })).collect())
        .collect::<anyhow::Result<Vec<Vec<Step>>>>()?;
    match &j.rotation {
        None => Ok(SphericalDiagram::from_faces(vertices, edges, faces)?),
        Some(rot) => {
            let mut rotation = vec![Vec::new(); vertices.len()];
            for (v, ends) in rot {
                let vi = vindex(v)?;
                rotation[vi] = ends
                    .iter()
                    .map(|tok| {
                        let (id, end) = match (tok.strip_suffix('h'), tok.strip_suffix('t')) {
                            (Some(id), _) => (id, End::Head),
                            (_, Some(id)) => (id, End::Tail),
                            _ => bail!("edge-end {tok:?} must end in h or t"),
                        };
                        Ok(EdgeEnd { edge: eindex(id)?, end })
                    })
                    .collect::<anyhow::Result<_>>()?;
            }
            Ok(SphericalDiagram { vertices, edges, faces, rotation })
        }
    }
}

pub fn render(d: &SphericalDiagram) -> Value {
    let id = |k: usize| format!("e{k}");
    let edges: Vec<EdgeJson> = d
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| EdgeJson {
            id: Some(id(k)),
            label: e.label.clone(),
            tail: d.vertices[e.tail].clone(),
            head: d.vertices[e.head].clone(),
        })
        .collect();
    let faces: Vec<Vec<(String, Direction)>> =
        d.faces.iter().map(|f| f.iter().map(|s| (id(s.edge), s.direction)).collect()).collect();
    let mut rotation = Map::new();
    for (v, ends) in d.rotation.iter().enumerate() {
        let toks: Vec<Value> = ends
            .iter()
            .map(|e| Value::String(format!("{}{}", id(e.edge), if e.end == End::Head { 'h' } else { 't' })))
            .collect();
        rotation.insert(d.vertices[v].clone(), Value::Array(toks));
    }
    serde_json::json!({
        "schema": super::json::SCHEMA,
        "vertices": d.vertices,
        "edges": edges,
        "faces": faces,
        "rotation": rotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lotcert_core::diagram::double_disc;
    use lotcert_core::{Log, Presentation};

    #[test]
    fn round_trip_and_derived_rotation() {
        let g = Log::from_names(&["a", "b", "c"], &[["a", "c", "b"]]).unwrap();
        let p = Presentation::of_log(&g);
        let d = double_disc(&p, 0).unwrap();
        let text = serde_json::to_string(&render(&d)).unwrap();
        assert_eq!(parse(&text).unwrap(), d);
        let mut v = render(&d);
        v.as_object_mut().unwrap().remove("rotation");
        assert_eq!(parse(&v.to_string()).unwrap(), d);
    }

    #[test]
    fn bad_references() {
        let text = r#"{"edges":[{"label":"a","tail":"v0","head":"v1"}],"faces":[[["e9","along"]]]}"#;
        assert!(parse(text).is_err());
        let text = r#"{"edges":[{"label":"a","tail":"v0","head":"v0"}],"faces":[],"rotation":{"v0":["e0x"]}}"#;
        assert!(parse(text).is_err());
    }
}
