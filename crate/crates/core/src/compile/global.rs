//! Global compilation. Every `<>` row aggregates messages from all past
//! (neighbour, snapshot) pairs, filtered on the integer time difference:
//! `<>Y chi` passes delta = -1, `<>P chi` passes delta <= -1, any other
//! `<>psi` passes delta = 0.

use super::{boolean_row, check_colours, copy, layer, root_readout, zero_row, CompilationArtifact, CompileError, Component, Dims};
use crate::logic::{enumerate_subformulas, l2_violation, Formula, Fragment, Node};
use crate::nn::{Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer, Time2Vec};
use crate::rational::int;
use crate::tgnn::{DeltaConvention, GlobalTgnn, TgnnModel};

pub const GLOBAL_DEVIATIONS: [&str; 2] = ["input_layout_layer", "bare_temporal_rows_unused"];

pub fn compile_global(phi: &Formula, k: usize) -> Result<CompilationArtifact, CompileError> {
    if let Some(bad) = l2_violation(phi) {
        return Err(CompileError::FragmentViolation {
            fragment: Fragment::L2,
            subformula: bad.to_string(),
        });
    }
    check_colours(phi, k)?;
    let index = enumerate_subformulas(phi);
    let n = index.len();
    let m = index.atom_count();

    // layout: colours -> n; the message is a constant zero
    let silent = Fnn::single(FnnLayer::zeros(k + 1, 1, crate::nn::Activation::TrRelu));
    let layout_rows = (0..n)
        .map(|r| match index.node(r) {
            Node::Atom(c) => copy(c - 1),
            _ => zero_row(),
        })
        .collect();
    let mut layers = vec![MpnnLayer::new(k, layer(k + 1, layout_rows), Aggregation::SumMsg(silent)).expect("compiled widths agree")];

    // msg hidden layer over x (n) || delta (1):
    //   x_j, a = trReLU(delta + 2), b = trReLU(delta + 1), past = trReLU(-delta)
    let (a, b, past) = (n, n + 1, n + 2);
    let mut hidden_rows: Vec<_> = (0..n).map(copy).collect();
    hidden_rows.push((vec![(n, int(1))], int(2)));
    hidden_rows.push((vec![(n, int(1))], int(1)));
    hidden_rows.push((vec![(n, int(-1))], int(0)));
    let hidden = layer(n + 1, hidden_rows);
    let msg_rows = (0..n)
        .map(|r| match index.node(r) {
            // a - b is 1 exactly at delta = -1
            Node::Diamond(c) => match index.node(c) {
                Node::Yesterday(chi) => (vec![(chi, int(1)), (a, int(1)), (b, int(-1))], int(-1)),
                Node::Past(chi) => (vec![(chi, int(1)), (past, int(1))], int(-1)),
                _ => (vec![(c, int(1)), (b, int(1))], int(-1)),
            },
            _ => zero_row(),
        })
        .collect();
    let msg = Fnn::new(vec![hidden.layers()[0].clone(), layer(n + 3, msg_rows).layers()[0].clone()]).expect("compiled widths agree");
    // comb over x (n) || aggregate (n)
    let comb_rows = (0..n)
        .map(|r| match index.node(r) {
            Node::Diamond(_) => copy(n + r),
            Node::Yesterday(_) | Node::Past(_) => zero_row(),
            node => boolean_row(node, r, |c| c),
        })
        .collect();
    let construction = MpnnLayer::new(n, layer(2 * n, comb_rows), Aggregation::SumMsg(msg)).expect("compiled widths agree");
    layers.extend(std::iter::repeat_n(construction, n - m));

    let mpnn = Mpnn::new(layers).expect("compiled widths agree");
    let model = GlobalTgnn::new(
        mpnn,
        Time2Vec::affine_identity(),
        root_readout(n, index.root()),
        DeltaConvention::PastMinusCurrent,
    )
    .expect("compiled widths agree");

    // a <> over a temporal child is one step above the child's body
    let mut level = vec![0usize; n];
    for i in 0..n {
        level[i] = match index.node(i) {
            Node::Atom(_) => 0,
            Node::Diamond(c) => match index.node(c) {
                Node::Yesterday(chi) | Node::Past(chi) => level[chi] + 1,
                _ => level[c] + 1,
            },
            node => 1 + node.children().into_iter().map(|c| level[c]).max().unwrap_or(0),
        };
    }
    let dimension_map = (0..n)
        .map(|i| Dims {
            current: i,
            yesterday: None,
            past: None,
        })
        .collect();
    let layer_map = (0..n).map(|i| (Component::Mpnn, level[i])).collect();
    Ok(CompilationArtifact {
        model: TgnnModel::Global(model),
        index,
        dimension_map,
        layer_map,
        deviations: GLOBAL_DEVIATIONS.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{check, parse_formula, SemanticsMode};
    use crate::tgnn::{classify, run_global};
    use crate::tgraph::{fixture_figure2_pair, random_temporal_graph, RandomGraphParams};

    fn global(a: &CompilationArtifact) -> &GlobalTgnn {
        match &a.model {
            TgnnModel::Global(t) => t,
            _ => unreachable!(),
        }
    }

    #[test]
    fn past_is_rejected() {
        assert_eq!(
            compile_global(&parse_formula("P c1").unwrap(), 1),
            Err(CompileError::FragmentViolation {
                fragment: Fragment::L2,
                subformula: "P c1".into()
            })
        );
    }

    #[test]
    fn figure2_pair_is_distinguished() {
        let (a, b) = fixture_figure2_pair();
        let art = compile_global(&parse_formula("<>(c1 & <>Y c2)").unwrap(), 2).unwrap();
        let ra = run_global(global(&art), &a.graph).unwrap();
        let rb = run_global(global(&art), &b.graph).unwrap();
        assert_eq!(ra.scalars[1][a.node], int(1));
        assert_eq!(rb.scalars[1][b.node], int(0));
    }

    #[test]
    fn temporal_neighbourhood_agreement() {
        for src in ["<>P c1", "<>Y c1", "<>(c1 & <>Y c2)", "!<>P(c1 & !<>Y c3) & <>c2", "<>(<>P c1 & !c2)"] {
            let phi = parse_formula(src).unwrap();
            let art = compile_global(&phi, 3).unwrap();
            for (static_edges, mode) in [(false, SemanticsMode::TemporalNeighbourhood), (true, SemanticsMode::Product)] {
                let params = RandomGraphParams {
                    static_edges,
                    ..Default::default()
                };
                for seed in 0..20 {
                    let tg = random_temporal_graph(&params, seed);
                    let run = run_global(global(&art), &tg).unwrap();
                    let table = check(&tg, &phi, mode).unwrap();
                    for t in 0..tg.len() {
                        for v in 0..tg.node_count() {
                            assert_eq!(classify(run.scalars[t][v]) == 1, table.root(v, t), "{src} {mode:?} seed {seed}");
                        }
                    }
                }
            }
        }
    }
}
