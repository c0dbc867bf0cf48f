//! The pair that no time-and-graph model separates, and models that do.

use tgnn_logic::compile::{compile_global, compile_recursive};
use tgnn_logic::logic::parse_formula;
use tgnn_logic::tgnn::ModelClass;
use tgnn_logic::verify::indistinguishability_battery;

fn main() {
    let phi = parse_formula("<>(c1 & <>Y c2)").unwrap();
    let (a, b) = tgnn_logic::tgraph::fixture_figure2_pair();
    for art in [compile_recursive(&phi, 2).unwrap(), compile_global(&phi, 2).unwrap()] {
        let out = |p: &tgnn_logic::tgraph::PointedTemporalGraph| art.model.run(&p.graph).unwrap().scalars()[p.time_index][p.node];
        println!("{:<9} model for {phi}: {} vs {}", art.model.arch(), out(&a), out(&b));
    }
    let report = indistinguishability_battery(ModelClass::TandG, 500, 1).unwrap();
    print!("{}", report.to_text());
}
