//! The pair that no global model separates, and a time-and-graph model that does.

use tgnn_logic::compile::compile_tandg;
use tgnn_logic::logic::parse_formula;
use tgnn_logic::tgnn::ModelClass;
use tgnn_logic::verify::indistinguishability_battery;

fn main() {
    let phi = parse_formula("Y c1").unwrap();
    let (a, b) = tgnn_logic::tgraph::fixture_figure4_pair();
    let art = compile_tandg(&phi, 1).unwrap();
    let out = |p: &tgnn_logic::tgraph::PointedTemporalGraph| art.model.run(&p.graph).unwrap().scalars()[p.time_index][p.node];
    println!("time-and-graph model for {phi}: {} vs {}", out(&a), out(&b));
    let report = indistinguishability_battery(ModelClass::Global, 500, 1).unwrap();
    print!("{}", report.to_text());
}
