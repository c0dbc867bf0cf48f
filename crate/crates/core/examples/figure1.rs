//! Checks the running example formula on the three-node graph and runs the
//! compiled recursive model on it.

use tgnn_logic::compile::compile_recursive;
use tgnn_logic::logic::{check, parse_formula, SemanticsMode};
use tgnn_logic::tgnn::classify;
use tgnn_logic::tgraph::fixture_figure1;

fn main() {
    let p = fixture_figure1();
    let phi = parse_formula("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))").unwrap();
    println!("{}", p.graph.describe());

    let table = check(&p.graph, &phi, SemanticsMode::Product).unwrap();
    for (i, f) in table.index().formulas().iter().enumerate() {
        let row: Vec<u8> = (0..p.graph.len()).map(|t| table.get(i, p.node, t) as u8).collect();
        println!("{row:?}  {f}");
    }

    let art = compile_recursive(&phi, 2).unwrap();
    let run = art.model.run(&p.graph).unwrap();
    let out = run.scalars()[p.time_index][p.node];
    println!("n = {}, m = {}, model output at (v, t4) = {out} -> class {}", art.subformula_count(), art.index.atom_count(), classify(out));
}
