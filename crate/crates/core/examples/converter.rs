//! Turns sampled time-and-graph models into recursive models and checks
//! that both compute the same outputs.

use tgnn_logic::compile::tandg_to_recursive;
use tgnn_logic::tgnn::{sample_tandg, SampleDims, TgnnModel};
use tgnn_logic::verify::{converter_differential, CorpusParams};

fn main() {
    let t = sample_tandg(&SampleDims::default(), 1);
    let r = tandg_to_recursive(&t).unwrap();
    println!(
        "time-and-graph: m1/m2 depth {}, cell depth {} -> recursive: depth {}, state width {}",
        t.m1().depth(),
        t.cell().depth(),
        r.mpnn().depth(),
        r.mpnn().output_width()
    );
    let model = TgnnModel::Recursive(r);
    println!("converted model class: {}", model.arch());
    print!("{}", converter_differential(100, &CorpusParams::default(), 9).unwrap().to_text());
}
