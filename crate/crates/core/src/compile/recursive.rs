use super::{boolean_row, check_colours, copy, layer, root_readout, zero_row, CompilationArtifact, CompileError, Component, Dims};
use crate::logic::{enumerate_subformulas, Formula, Node};
use crate::nn::{Aggregation, Mpnn, MpnnLayer};
use crate::rational::int;
use crate::tgnn::{RecursiveTgnn, TgnnModel};

pub const RECURSIVE_DEVIATIONS: [&str; 2] = ["shift_layer_current_column", "input_layout_layer"];

/// Compiles `phi` for graphs with `k` colours into a recursive TGNN.
///
/// The carried state is `cur || past` (2n wide); the working layout is
/// `cur || yesterday || past` (3n wide). Layers: one input-layout layer,
/// `n - m` construction layers, one shift layer.
pub fn compile_recursive(phi: &Formula, k: usize) -> Result<CompilationArtifact, CompileError> {
    check_colours(phi, k)?;
    let index = enumerate_subformulas(phi);
    let n = index.len();
    let m = index.atom_count();
    let w = 3 * n;

    // colours (k) || carried cur (n) || carried past (n)  ->  working layout
    let layout_rows = (0..w)
        .map(|r| match r {
            r if r < n => match index.node(r) {
                Node::Atom(c) => copy(c - 1),
                _ => zero_row(),
            },
            r => copy(k + r - n),
        })
        .collect();
    let mut layers = vec![sum_layer(k + 2 * n, layer(2 * (k + 2 * n), layout_rows))];

    // comb(x, y) = trReLU(Cx + Ay + b) over x (3n) || y (3n)
    let rows: Vec<_> = (0..w)
        .map(|r| {
            if r >= n {
                return copy(r);
            }
            match index.node(r) {
                Node::Diamond(a) => (vec![(w + a, int(1))], int(0)),
                Node::Yesterday(a) => copy(n + a),
                Node::Past(a) => copy(2 * n + a),
                node => boolean_row(node, r, |c| c),
            }
        })
        .collect();
    let construction = sum_layer(w, layer(2 * w, rows));
    for _ in 0..n - m {
        layers.push(construction.clone());
    }

    // shift: cur_j and trReLU(cur_j + yesterday_j + past_j)
    let shift_rows = (0..2 * n)
        .map(|r| {
            if r < n {
                copy(r)
            } else {
                let j = r - n;
                (vec![(j, int(1)), (n + j, int(1)), (2 * n + j, int(1))], int(0))
            }
        })
        .collect();
    layers.push(sum_layer(w, layer(2 * w, shift_rows)));

    let mpnn = Mpnn::new(layers).expect("compiled widths agree");
    let model = RecursiveTgnn::new(mpnn, root_readout(2 * n, index.root())).expect("compiled widths agree");
    let dimension_map = (0..n)
        .map(|i| Dims {
            current: i,
            yesterday: Some(n + i),
            past: Some(2 * n + i),
        })
        .collect();
    let layer_map = (0..n).map(|i| (Component::Mpnn, index.height(i))).collect();
    Ok(CompilationArtifact {
        model: TgnnModel::Recursive(model),
        index,
        dimension_map,
        layer_map,
        deviations: RECURSIVE_DEVIATIONS.to_vec(),
    })
}

fn sum_layer(state: usize, comb: crate::nn::Fnn) -> MpnnLayer {
    MpnnLayer::new(state, comb, Aggregation::Sum).expect("compiled widths agree")
}
