//! Compares compiled models with the model checker on random graphs.

use tgnn_logic::logic::{parse_formula, SemanticsMode};
use tgnn_logic::verify::{equiv_sweep, Arch, CorpusParams};

fn main() {
    let corpus = CorpusParams::default();
    let runs = [
        ("P(c1 & <>Y c2) & !c3", Arch::Recursive, SemanticsMode::Product, corpus),
        ("Y(c1 & <>c2) | P c3", Arch::TandG, SemanticsMode::Product, corpus),
        ("<>Y c1 & <>(c2 & <>P c3)", Arch::Global, SemanticsMode::TemporalNeighbourhood, corpus),
        ("<>P c1", Arch::Global, SemanticsMode::Product, corpus.edge_static(true)),
        ("<>P c1", Arch::Global, SemanticsMode::Product, corpus),
    ];
    for (text, arch, mode, corpus) in runs {
        let r = equiv_sweep(&parse_formula(text).unwrap(), arch, mode, &corpus, 42).unwrap();
        print!("{}", r.to_text());
    }
}
