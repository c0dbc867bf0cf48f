use super::CompileError;
use crate::nn::{parallel_compose, Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer};
use crate::tgnn::{RecursiveTgnn, TandGTgnn};

/// Rewrites a time-and-graph model with a single-layer cell as a recursive
/// one: `M1 || M2` side by side, then one layer applying the cell and
/// ignoring the aggregate.
pub fn tandg_to_recursive(t: &TandGTgnn) -> Result<RecursiveTgnn, CompileError> {
    if t.cell().depth() != 1 {
        return Err(CompileError::UnsupportedCell { depth: t.cell().depth() });
    }
    let side = parallel_compose(t.m1(), t.m2()).map_err(|_| CompileError::UnsupportedCell { depth: 1 })?;
    let state = side.output_width();
    let cell = &t.cell().layers()[0];
    let entries = cell
        .sparse_rows()
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().map(move |&(c, w)| (r, c, w)));
    let bias = cell.bias().iter().copied().enumerate();
    let comb = Fnn::single(FnnLayer::from_entries(2 * state, cell.out_width(), entries, bias, cell.activation()));
    let apply_cell = MpnnLayer::new(state, comb, Aggregation::Sum).expect("cell reads M1 || M2");
    let layers = side.layers().iter().cloned().chain([apply_cell]).collect();
    let mpnn = Mpnn::new(layers).expect("widths agree");
    Ok(RecursiveTgnn::new(mpnn, t.out().clone()).expect("carried width equals the cell output"))
}
