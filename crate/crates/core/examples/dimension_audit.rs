//! Audits the per-dimension meaning of a compiled recursive model's states.

use tgnn_logic::compile::compile_recursive;
use tgnn_logic::logic::parse_formula;
use tgnn_logic::verify::{dimension_audit, CorpusParams};

fn main() {
    let phi = parse_formula("P(c1 & <>Y c2) & !Y P c3").unwrap();
    let art = compile_recursive(&phi, 3).unwrap();
    for (i, (f, d)) in art.index.formulas().iter().zip(&art.dimension_map).enumerate() {
        println!("{:>2}  layer {}  dims {:?}  {f}", i + 1, art.layer_map[i].1, d);
    }
    print!("{}", dimension_audit(&art, &CorpusParams::default(), 3).unwrap().to_text());
}
