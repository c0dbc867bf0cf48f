//! Network JSON:
//! `{"kind": "fnn", "layers": [{"W": [[..]], "b": [..], "act": "trrelu"}]}`,
//! `{"kind": "mpnn", "layers": [[fnn layer, ..] per MPNN layer], "agg": ["sum" | {"summsg": fnn}]}`,
//! `{"kind": "time2vec", "w": [..], "b": [..], "act": "sin"}`.

use super::{Activation, Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer, NnError, Time2Vec};
use crate::rational::{from_json, to_json, Q};
use serde_json::{json, Value};

fn schema(path: &str, message: impl Into<String>) -> NnError {
    NnError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn layer_to_json(l: &FnnLayer) -> Value {
    json!({
        "W": l.weights().iter().map(|r| r.iter().map(to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "b": l.bias().iter().map(to_json).collect::<Vec<_>>(),
        "act": l.activation().name(),
    })
}

fn fnn_layers_json(f: &Fnn) -> Value {
    Value::Array(f.layers().iter().map(layer_to_json).collect())
}

pub fn fnn_to_json(f: &Fnn) -> Value {
    json!({"kind": "fnn", "layers": fnn_layers_json(f)})
}

fn vector(v: &Value, path: &str) -> Result<Vec<Q>, NnError> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| from_json(x).ok_or_else(|| schema(&format!("{path}[{i}]"), "expected a rational")))
        .collect()
}

fn layer_from_json(v: &Value, path: &str) -> Result<FnnLayer, NnError> {
    let w = v.get("W").ok_or_else(|| schema(path, "missing \"W\""))?;
    let rows = w
        .as_array()
        .ok_or_else(|| schema(&format!("{path}.W"), "expected an array of rows"))?
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("{path}.W[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let b = vector(v.get("b").ok_or_else(|| schema(path, "missing \"b\""))?, &format!("{path}.b"))?;
    let act = v
        .get("act")
        .and_then(Value::as_str)
        .and_then(Activation::from_name)
        .ok_or_else(|| schema(&format!("{path}.act"), "expected \"trrelu\", \"none\" or \"sin\""))?;
    let in_width = rows.first().map_or(0, Vec::len);
    FnnLayer::new(in_width, rows, b, act)
}

fn fnn_layers_from_json(v: &Value, path: &str) -> Result<Fnn, NnError> {
    let layers = v
        .as_array()
        .ok_or_else(|| schema(path, "expected an array of layers"))?
        .iter()
        .enumerate()
        .map(|(i, l)| layer_from_json(l, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Fnn::new(layers)
}

fn expect_kind(v: &Value, path: &str, kind: &str) -> Result<(), NnError> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        _ => Err(schema(&format!("{path}.kind"), format!("expected \"{kind}\""))),
    }
}

pub fn fnn_from_json(v: &Value, path: &str) -> Result<Fnn, NnError> {
    expect_kind(v, path, "fnn")?;
    fnn_layers_from_json(
        v.get("layers").ok_or_else(|| schema(path, "missing \"layers\""))?,
        &format!("{path}.layers"),
    )
}

pub fn mpnn_to_json(m: &Mpnn) -> Value {
    let layers: Vec<Value> = m.layers().iter().map(|l| fnn_layers_json(l.comb())).collect();
    let agg: Vec<Value> = m
        .layers()
        .iter()
        .map(|l| match l.agg() {
            Aggregation::Sum => json!("sum"),
            Aggregation::SumMsg(msg) => json!({"summsg": fnn_to_json(msg)}),
        })
        .collect();
    json!({"kind": "mpnn", "layers": layers, "agg": agg})
}

pub fn mpnn_from_json(v: &Value, path: &str) -> Result<Mpnn, NnError> {
    expect_kind(v, path, "mpnn")?;
    let layers = v
        .get("layers")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "missing \"layers\" array"))?;
    let aggs = v
        .get("agg")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(path, "missing \"agg\" array"))?;
    if aggs.len() != layers.len() {
        return Err(schema(&format!("{path}.agg"), "one aggregation per layer expected"));
    }
    let mut out = Vec::with_capacity(layers.len());
    for (i, (l, a)) in layers.iter().zip(aggs).enumerate() {
        let comb = fnn_layers_from_json(l, &format!("{path}.layers[{i}]"))?;
        let apath = format!("{path}.agg[{i}]");
        let (agg, state_width) = match a {
            Value::String(s) if s == "sum" => {
                if comb.input_width() % 2 != 0 {
                    return Err(schema(&apath, "sum aggregation needs an even comb input width"));
                }
                (Aggregation::Sum, comb.input_width() / 2)
            }
            Value::Object(o) if o.contains_key("summsg") => {
                let msg = fnn_from_json(&o["summsg"], &format!("{apath}.summsg"))?;
                let state = comb
                    .input_width()
                    .checked_sub(msg.output_width())
                    .ok_or_else(|| schema(&apath, "msg output wider than comb input"))?;
                (Aggregation::SumMsg(msg), state)
            }
            _ => return Err(schema(&apath, "expected \"sum\" or {\"summsg\": ..}")),
        };
        out.push(MpnnLayer::new(state_width, comb, agg)?);
    }
    Mpnn::new(out)
}

pub fn time2vec_to_json(e: &Time2Vec) -> Value {
    json!({
        "kind": "time2vec",
        "w": e.weights().iter().map(to_json).collect::<Vec<_>>(),
        "b": e.bias().iter().map(to_json).collect::<Vec<_>>(),
        "act": e.periodic_activation().name(),
    })
}

pub fn time2vec_from_json(v: &Value, path: &str) -> Result<Time2Vec, NnError> {
    expect_kind(v, path, "time2vec")?;
    let w = vector(v.get("w").ok_or_else(|| schema(path, "missing \"w\""))?, &format!("{path}.w"))?;
    let b = vector(v.get("b").ok_or_else(|| schema(path, "missing \"b\""))?, &format!("{path}.b"))?;
    if w.is_empty() || w.len() != b.len() {
        return Err(schema(path, "\"w\" and \"b\" must be non-empty and of equal length"));
    }
    Ok(Time2Vec::new(w, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::gadgets::eq_gate;
    use crate::rational::{frac, int};

    #[test]
    fn fnn_round_trip_with_fractions() {
        let f = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 0, frac(1, 2)), (0, 1, int(-2))], [(0, frac(-1, 3))], Activation::TrRelu));
        let v = fnn_to_json(&f);
        assert_eq!(v["layers"][0]["W"][0][0], json!("1/2"));
        assert_eq!(v["layers"][0]["W"][0][1], json!(-2));
        assert_eq!(fnn_from_json(&v, "$").unwrap(), f);
        let g = eq_gate(-1);
        assert_eq!(fnn_from_json(&fnn_to_json(&g), "$").unwrap(), g);
    }

    #[test]
    fn mpnn_round_trip() {
        let msg = Fnn::identity(3, Activation::TrRelu);
        // state 2, one time feature, aggregate width 3
        let comb = Fnn::single(FnnLayer::from_entries(5, 2, [(0, 0, int(1)), (1, 4, int(1))], [], Activation::TrRelu));
        let l = MpnnLayer::new(2, comb, Aggregation::SumMsg(msg)).unwrap();
        let m = Mpnn::new(vec![l, MpnnLayer::identity(2)]).unwrap();
        assert_eq!(mpnn_from_json(&mpnn_to_json(&m), "$").unwrap(), m);
    }

    #[test]
    fn schema_paths() {
        let bad = json!({"kind": "fnn", "layers": [{"W": [[1]], "b": [0], "act": "relu"}]});
        match fnn_from_json(&bad, "$") {
            Err(NnError::Schema { path, .. }) => assert_eq!(path, "$.layers[0].act"),
            other => panic!("{other:?}"),
        }
        let e = Time2Vec::new(vec![int(1), int(2)], vec![int(0), frac(1, 2)]);
        assert_eq!(time2vec_from_json(&time2vec_to_json(&e), "$").unwrap(), e);
    }
}
