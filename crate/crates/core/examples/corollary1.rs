//! Each architecture expresses a formula that defeats the other one.

use tgnn_logic::logic::{in_fragment_l1, in_fragment_l2, parse_formula};
use tgnn_logic::tgnn::ModelClass;
use tgnn_logic::verify::{indistinguishability_battery, Arch};

fn main() {
    let cases = [
        ("<>(c1 & <>Y c2)", Arch::Global, tgnn_logic::tgraph::fixture_figure2_pair(), ModelClass::TandG),
        ("Y c1", Arch::TandG, tgnn_logic::tgraph::fixture_figure4_pair(), ModelClass::Global),
    ];
    for (text, arch, (a, b), rival) in cases {
        let phi = parse_formula(text).unwrap();
        let art = arch.compile(&phi, a.graph.label_width()).unwrap();
        let out = |p: &tgnn_logic::tgraph::PointedTemporalGraph| art.model.run(&p.graph).unwrap().scalars()[p.time_index][p.node];
        println!("{text}  (L1 {}, L2 {})", in_fragment_l1(&phi), in_fragment_l2(&phi));
        println!("  compiled {} model: {} vs {}", arch.name(), out(&a), out(&b));
        let r = indistinguishability_battery(rival, 200, 3).unwrap();
        println!("  {} sampled {} models separating the pair: {}", r.trials, rival.name(), r.mismatches);
    }
}
