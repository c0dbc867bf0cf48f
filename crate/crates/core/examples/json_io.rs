//! Round-trips a graph and a compiled model through JSON.

use tgnn_logic::compile::compile_tandg;
use tgnn_logic::logic::parse_formula;
use tgnn_logic::tgnn::{model_to_json, parse_model};
use tgnn_logic::tgraph::{parse_json, random_temporal_graph, serialize_json, RandomGraphParams};

fn main() {
    let tg = random_temporal_graph(&RandomGraphParams::default(), 5);
    let text = serialize_json(&tg);
    println!("{text}");
    assert_eq!(parse_json(&text).unwrap(), tg);

    let art = compile_tandg(&parse_formula("Y(c1 & c2) & c3").unwrap(), 3).unwrap();
    let model_text = serde_json::to_string(&model_to_json(&art.model)).unwrap();
    let back = parse_model(&model_text).unwrap();
    let (a, b) = (art.model.run(&tg).unwrap(), back.run(&tg).unwrap());
    assert_eq!(a.scalars(), b.scalars());
    println!("model JSON: {} bytes, outputs identical after reload", model_text.len());
}
