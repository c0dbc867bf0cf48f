//! Time-and-graph compilation. Subformulas fall into three categories:
//! no `Y`/`P` inside (computed by M1 on the labelled snapshot), every atom
//! occurrence below a `Y`/`P` (computed by M2 on the carried state), and the
//! remaining boolean combinations (computed by the cell).

use super::{boolean_row, check_colours, copy, layer, root_readout, zero_row, CompilationArtifact, CompileError, Component, Dims};
use crate::logic::{enumerate_subformulas, l1_violation, Formula, Fragment, Node, SubformulaIndex};
use crate::nn::{Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer};
use crate::rational::{int, Q};
use crate::tgnn::{TandGTgnn, TgnnModel};

pub const CELL_ACCUMULATOR_DEVIATION: &str = "cell_past_accumulator_gate";
pub const MULTI_LAYER_CELL_DEVIATION: &str = "multi_layer_cell";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Category {
    Static,
    Guarded,
    Mixed,
}

fn category(f: &Formula) -> Category {
    if !f.has_temporal() {
        Category::Static
    } else if f.atoms_guarded() {
        Category::Guarded
    } else {
        Category::Mixed
    }
}

/// Layer (after M2's prefix) at which a guarded subformula is available.
fn guarded_height(index: &SubformulaIndex, i: usize, memo: &mut [Option<usize>]) -> usize {
    if let Some(h) = memo[i] {
        return h;
    }
    let h = match index.node(i) {
        Node::Yesterday(_) | Node::Past(_) => 1,
        node => 1 + node
            .children()
            .into_iter()
            .map(|c| guarded_height(index, c, memo))
            .max()
            .unwrap_or(0),
    };
    memo[i] = Some(h);
    h
}

fn sum_layer(state: usize, comb: Fnn) -> MpnnLayer {
    MpnnLayer::new(state, comb, Aggregation::Sum).expect("compiled widths agree")
}

pub fn compile_tandg(phi: &Formula, k: usize) -> Result<CompilationArtifact, CompileError> {
    if let Some(bad) = l1_violation(phi) {
        return Err(CompileError::FragmentViolation {
            fragment: Fragment::L1,
            subformula: bad.to_string(),
        });
    }
    check_colours(phi, k)?;
    let index = enumerate_subformulas(phi);
    let n = index.len();
    let cats: Vec<Category> = index.formulas().iter().map(category).collect();

    // M1: colours -> n, then the static rows
    let layout: Vec<_> = (0..n)
        .map(|r| match index.node(r) {
            Node::Atom(c) => copy(c - 1),
            _ => zero_row(),
        })
        .collect();
    let mut m1 = vec![sum_layer(k, layer(2 * k, layout))];
    let h1 = (0..n)
        .filter(|&i| cats[i] == Category::Static)
        .map(|i| index.height(i))
        .max()
        .unwrap_or(0);
    let static_rows: Vec<_> = (0..n)
        .map(|r| match (cats[r], index.node(r)) {
            (Category::Static, Node::Diamond(a)) => (vec![(n + a, int(1))], int(0)),
            (Category::Static, node) => boolean_row(node, r, |c| c),
            _ => zero_row(),
        })
        .collect();
    let static_layer = sum_layer(n, layer(2 * n, static_rows));
    m1.extend(std::iter::repeat_n(static_layer, h1));

    // M2: carried (cur || past) -> 0 || cur || past, guarded rows, drop middle block
    let w = 3 * n;
    let prefix: Vec<_> = (0..w).map(|r| if r < n { zero_row() } else { copy(r - n) }).collect();
    let mut m2 = vec![sum_layer(2 * n, layer(4 * n, prefix))];
    let mut memo = vec![None; n];
    let h2 = (0..n)
        .filter(|&i| cats[i] == Category::Guarded)
        .map(|i| guarded_height(&index, i, &mut memo))
        .max()
        .unwrap_or(0);
    let guarded_rows: Vec<_> = (0..w)
        .map(|r| {
            if r >= n {
                return copy(r);
            }
            if cats[r] != Category::Guarded {
                return zero_row();
            }
            match index.node(r) {
                Node::Yesterday(a) => copy(n + a),
                Node::Past(a) => copy(2 * n + a),
                Node::Diamond(a) => (vec![(w + a, int(1))], int(0)),
                node => boolean_row(node, r, |c| c),
            }
        })
        .collect();
    let guarded_layer = sum_layer(w, layer(2 * w, guarded_rows));
    m2.extend(std::iter::repeat_n(guarded_layer, h2));
    let drop: Vec<_> = (0..2 * n).map(|r| if r < n { copy(r) } else { copy(n + r) }).collect();
    m2.push(sum_layer(w, layer(2 * w, drop)));

    let depth = m1.len().max(m2.len());
    let m1 = Mpnn::new(m1).expect("compiled widths agree").padded_to(depth);
    let m2 = Mpnn::new(m2).expect("compiled widths agree").padded_to(depth);

    // cell stages: a mixed node is computed one stage after its mixed children
    let mut stage = vec![0usize; n];
    for i in 0..n {
        if cats[i] == Category::Mixed {
            stage[i] = 1 + index.node(i).children().into_iter().map(|c| stage[c]).max().unwrap_or(0);
        }
    }
    let cell_depth = stage.iter().copied().max().unwrap_or(0).max(1);
    let mut cell_layers: Vec<FnnLayer> = Vec::with_capacity(cell_depth);
    for l in 1..=cell_depth {
        // layer 1 reads M1 (n) || M2 cur (n) || M2 past (n); later layers cur (n) || past (n)
        let (in_width, cur_col, past_col): (usize, Box<dyn Fn(usize) -> usize>, usize) = if l == 1 {
            let cats = cats.clone();
            (3 * n, Box::new(move |c| if cats[c] == Category::Guarded { n + c } else { c }), 2 * n)
        } else {
            (2 * n, Box::new(|c| c), n)
        };
        let mut rows: Vec<(Vec<(usize, Q)>, Q)> = Vec::with_capacity(2 * n);
        for j in 0..n {
            rows.push(if stage[j] == l {
                boolean_row(index.node(j), j, &cur_col)
            } else if stage[j] < l {
                copy(cur_col(j))
            } else {
                zero_row()
            });
        }
        for j in 0..n {
            let past = past_col + j;
            rows.push(if stage[j] == l {
                // true now, or true before: the gate's pre-activation plus 2 * past
                let (mut es, b) = boolean_row(index.node(j), j, &cur_col);
                es.push((past, int(2)));
                (es, b)
            } else if l == 1 && stage[j] == 0 {
                (vec![(j, int(1)), (n + j, int(1)), (past, int(1))], int(0))
            } else {
                copy(past)
            });
        }
        cell_layers.push(layer(in_width, rows).layers()[0].clone());
    }
    let cell = Fnn::new(cell_layers).expect("compiled widths agree");

    let model = TandGTgnn::new(m1, m2, cell, root_readout(2 * n, index.root())).expect("compiled widths agree");
    let dimension_map = (0..n)
        .map(|i| Dims {
            current: i,
            yesterday: Some(n + i),
            past: Some(2 * n + i),
        })
        .collect();
    let layer_map = (0..n)
        .map(|i| match cats[i] {
            Category::Static => (Component::M1, index.height(i)),
            Category::Guarded => (Component::M2, guarded_height(&index, i, &mut memo)),
            Category::Mixed => (Component::Cell, stage[i]),
        })
        .collect();
    let mut deviations = vec![CELL_ACCUMULATOR_DEVIATION];
    if cell_depth > 1 {
        deviations.push(MULTI_LAYER_CELL_DEVIATION);
    }
    Ok(CompilationArtifact {
        model: TgnnModel::TandG(model),
        index,
        dimension_map,
        layer_map,
        deviations,
    })
}
