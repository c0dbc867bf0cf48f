//! JSON form of a temporal graph:
//!
//! ```json
//! {"nodes": ["u","w","v"], "colours": 2,
//!  "snapshots": [{"t": 1, "edges": [["u","w"]], "labels": {"v": [0,1]}}]}
//! ```
//!
//! Omitted label entries are all-zero vectors.

use super::{GraphError, StaticGraph, TemporalGraph};
use crate::rational::{from_json, to_json, Q};
use num_traits::Zero;
use serde_json::{json, Map, Value};

fn violation(path: impl Into<String>, message: impl Into<String>) -> GraphError {
    GraphError::SchemaViolation {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, GraphError> {
    obj.get(key)
        .ok_or_else(|| violation(format!("{path}.{key}"), "missing key"))
}

pub fn parse_json(text: &str) -> Result<TemporalGraph, GraphError> {
    let root: Value = serde_json::from_str(text).map_err(|e| GraphError::JsonSyntax(e.to_string()))?;
    from_value(&root)
}

pub(crate) fn from_value(root: &Value) -> Result<TemporalGraph, GraphError> {
    let obj = root
        .as_object()
        .ok_or_else(|| violation("$", "expected an object"))?;
    let names: Vec<String> = field(obj, "nodes", "$")?
        .as_array()
        .ok_or_else(|| violation("$.nodes", "expected an array of names"))?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| violation(format!("$.nodes[{i}]"), "expected a string"))
        })
        .collect::<Result<_, _>>()?;
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(violation(format!("$.nodes[{i}]"), format!("duplicate node {n:?}")));
        }
    }
    let width = field(obj, "colours", "$")?
        .as_u64()
        .ok_or_else(|| violation("$.colours", "expected a non-negative integer"))? as usize;
    let index = |name: &Value, path: &str| -> Result<usize, GraphError> {
        let s = name
            .as_str()
            .ok_or_else(|| violation(path, "expected a node name"))?;
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| violation(path, format!("unknown node {s:?}")))
    };
    let snaps = field(obj, "snapshots", "$")?
        .as_array()
        .ok_or_else(|| violation("$.snapshots", "expected an array"))?;
    if snaps.is_empty() {
        return Err(violation("$.snapshots", "at least one snapshot required"));
    }
    let mut snapshots = Vec::with_capacity(snaps.len());
    for (si, snap) in snaps.iter().enumerate() {
        let path = format!("$.snapshots[{si}]");
        let s = snap
            .as_object()
            .ok_or_else(|| violation(&path, "expected an object"))?;
        let t = from_json(field(s, "t", &path)?)
            .ok_or_else(|| violation(format!("{path}.t"), "expected a number or \"p/q\""))?;
        let mut edges = Vec::new();
        if let Some(es) = s.get("edges") {
            let es = es
                .as_array()
                .ok_or_else(|| violation(format!("{path}.edges"), "expected an array"))?;
            for (ei, e) in es.iter().enumerate() {
                let ep = format!("{path}.edges[{ei}]");
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| violation(&ep, "expected a pair of node names"))?;
                edges.push((index(&pair[0], &ep)?, index(&pair[1], &ep)?));
            }
        }
        let mut labels = vec![vec![Q::zero(); width]; names.len()];
        if let Some(ls) = s.get("labels") {
            let ls = ls
                .as_object()
                .ok_or_else(|| violation(format!("{path}.labels"), "expected an object"))?;
            for (name, vec) in ls {
                let lp = format!("{path}.labels.{name}");
                let v = index(&Value::from(name.as_str()), &lp)?;
                let vals = vec
                    .as_array()
                    .ok_or_else(|| violation(&lp, "expected an array"))?;
                if vals.len() != width {
                    return Err(violation(
                        &lp,
                        format!("label width {} but colours = {width}", vals.len()),
                    ));
                }
                labels[v] = vals
                    .iter()
                    .map(|x| from_json(x).ok_or_else(|| violation(&lp, "expected a number")))
                    .collect::<Result<_, _>>()?;
            }
        }
        let g = StaticGraph::new(names.len(), edges, labels)
            .map_err(|e| violation(&path, e.to_string()))?;
        snapshots.push((g, t));
    }
    TemporalGraph::with_names(names, snapshots).map_err(|e| violation("$.snapshots", e.to_string()))
}

pub(crate) fn to_value(tg: &TemporalGraph) -> Value {
    let names = tg.names();
    let snapshots: Vec<Value> = tg
        .snapshots()
        .iter()
        .map(|s| {
            let edges: Vec<Value> = s
                .graph
                .edges()
                .iter()
                .map(|&(a, b)| json!([names[a], names[b]]))
                .collect();
            let mut labels = Map::new();
            for (v, l) in s.graph.labels().iter().enumerate() {
                if l.iter().any(|x| !x.is_zero()) {
                    labels.insert(names[v].clone(), Value::Array(l.iter().map(to_json).collect()));
                }
            }
            json!({"t": to_json(&s.time), "edges": edges, "labels": labels})
        })
        .collect();
    json!({"nodes": names, "colours": tg.label_width(), "snapshots": snapshots})
}

pub fn serialize_json(tg: &TemporalGraph) -> String {
    to_value(tg).to_string()
}
