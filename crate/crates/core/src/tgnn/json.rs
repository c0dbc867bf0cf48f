//! Model JSON: `{"arch": "recursive"|"tandg"|"global", "components": {..},
//! "delta_convention": "past_minus_current"}`.

use super::{DeltaConvention, GlobalTgnn, RecursiveTgnn, TandGTgnn, TgnnError, TgnnModel};
use crate::nn::json::{fnn_from_json, fnn_to_json, mpnn_from_json, mpnn_to_json, time2vec_from_json, time2vec_to_json};
use crate::nn::NnError;
use serde_json::{json, Value};

pub fn model_to_json(model: &TgnnModel) -> Value {
    let (components, delta) = match model {
        TgnnModel::Recursive(t) => (
            json!({"mpnn": mpnn_to_json(t.mpnn()), "out": fnn_to_json(t.out())}),
            DeltaConvention::default(),
        ),
        TgnnModel::TandG(t) => (
            json!({
                "m1": mpnn_to_json(t.m1()),
                "m2": mpnn_to_json(t.m2()),
                "cell": fnn_to_json(t.cell()),
                "out": fnn_to_json(t.out()),
            }),
            DeltaConvention::default(),
        ),
        TgnnModel::Global(t) => (
            json!({
                "mpnn": mpnn_to_json(t.mpnn()),
                "enc": time2vec_to_json(t.encoder()),
                "out": fnn_to_json(t.out()),
            }),
            t.delta_convention(),
        ),
    };
    json!({"arch": model.arch(), "components": components, "delta_convention": delta.name()})
}

fn schema(path: &str, message: &str) -> TgnnError {
    TgnnError::Schema {
        path: path.to_string(),
        message: message.to_string(),
    }
}

fn lift(e: NnError) -> TgnnError {
    match e {
        NnError::Schema { path, message } => TgnnError::Schema { path, message },
        other => TgnnError::Nn(other),
    }
}

pub fn model_from_json(v: &Value) -> Result<TgnnModel, TgnnError> {
    let c = v
        .get("components")
        .filter(|c| c.is_object())
        .ok_or_else(|| schema("$.components", "missing components object"))?;
    let part = |key: &str| {
        c.get(key)
            .ok_or_else(|| schema(&format!("$.components.{key}"), "missing component"))
    };
    let path = |key: &str| format!("$.components.{key}");
    let delta = match v.get("delta_convention") {
        None => DeltaConvention::default(),
        Some(d) => d
            .as_str()
            .and_then(DeltaConvention::from_name)
            .ok_or_else(|| schema("$.delta_convention", "expected \"past_minus_current\" or \"current_minus_past\""))?,
    };
    match v.get("arch").and_then(Value::as_str) {
        Some("recursive") => {
            let mpnn = mpnn_from_json(part("mpnn")?, &path("mpnn")).map_err(lift)?;
            let out = fnn_from_json(part("out")?, &path("out")).map_err(lift)?;
            Ok(TgnnModel::Recursive(RecursiveTgnn::new(mpnn, out)?))
        }
        Some("tandg") => {
            let m1 = mpnn_from_json(part("m1")?, &path("m1")).map_err(lift)?;
            let m2 = mpnn_from_json(part("m2")?, &path("m2")).map_err(lift)?;
            let cell = fnn_from_json(part("cell")?, &path("cell")).map_err(lift)?;
            let out = fnn_from_json(part("out")?, &path("out")).map_err(lift)?;
            Ok(TgnnModel::TandG(TandGTgnn::new(m1, m2, cell, out)?))
        }
        Some("global") => {
            let mpnn = mpnn_from_json(part("mpnn")?, &path("mpnn")).map_err(lift)?;
            let enc = time2vec_from_json(part("enc")?, &path("enc")).map_err(lift)?;
            let out = fnn_from_json(part("out")?, &path("out")).map_err(lift)?;
            Ok(TgnnModel::Global(GlobalTgnn::new(mpnn, enc, out, delta)?))
        }
        _ => Err(schema("$.arch", "expected \"recursive\", \"tandg\" or \"global\"")),
    }
}

pub fn parse_model(text: &str) -> Result<TgnnModel, TgnnError> {
    let v: Value = serde_json::from_str(text).map_err(|e| TgnnError::JsonSyntax(e.to_string()))?;
    model_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tgnn::{sample_model, ModelClass, SampleDims};

    #[test]
    fn sampled_models_round_trip() {
        for class in [ModelClass::Recursive, ModelClass::TandG, ModelClass::Global] {
            for seed in 0..5 {
                let m = sample_model(class, &SampleDims::default(), seed);
                let text = model_to_json(&m).to_string();
                assert_eq!(parse_model(&text).unwrap(), m);
            }
        }
    }

    #[test]
    fn bad_arch() {
        assert!(matches!(
            parse_model(r#"{"arch": "rnn", "components": {}}"#),
            Err(TgnnError::Schema { .. })
        ));
        assert!(matches!(parse_model("{"), Err(TgnnError::JsonSyntax(_))));
    }
}
