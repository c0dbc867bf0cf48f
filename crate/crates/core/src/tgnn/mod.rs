//! Recursive, time-and-graph and global temporal GNNs.

mod json;
mod runtime;
mod sample;

pub use json::{model_from_json, model_to_json, parse_model};
pub use runtime::{run_global, run_recursive, run_tandg, GlobalRun, RecursiveRun, TandGRun};
pub use sample::{sample_model, sample_tandg, ModelClass, SampleDims};

use crate::nn::{Fnn, Mpnn, NnError, Time2Vec};
use crate::rational::{frac, Q};
use crate::tgraph::TemporalGraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TgnnError {
    #[error(transparent)]
    Nn(#[from] NnError),
    #[error("invalid model: {0}")]
    Invariant(String),
    #[error("model JSON syntax error: {0}")]
    JsonSyntax(String),
    #[error("invalid model JSON at {path}: {message}")]
    Schema { path: String, message: String },
}

fn mismatch(context: &'static str, expected: usize, found: usize) -> TgnnError {
    TgnnError::Nn(NnError::DimensionMismatch { context, expected, found })
}

fn check_out(out: &Fnn, width: usize) -> Result<(), TgnnError> {
    if out.depth() != 1 {
        return Err(TgnnError::Invariant("out must be a single-layer FNN".into()));
    }
    if out.output_width() != 1 {
        return Err(mismatch("out output", 1, out.output_width()));
    }
    if out.input_width() != width {
        return Err(mismatch("out input", width, out.input_width()));
    }
    Ok(())
}

/// One MPNN re-applied at every snapshot; its input is the current colours
/// followed by the previous output embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveTgnn {
    mpnn: Mpnn,
    out: Fnn,
}

impl RecursiveTgnn {
    pub fn new(mpnn: Mpnn, out: Fnn) -> Result<Self, TgnnError> {
        if mpnn.input_width() < mpnn.output_width() {
            return Err(mismatch(
                "recursive input (colours + carried state)",
                mpnn.output_width(),
                mpnn.input_width(),
            ));
        }
        check_out(&out, mpnn.output_width())?;
        Ok(RecursiveTgnn { mpnn, out })
    }

    pub fn mpnn(&self) -> &Mpnn {
        &self.mpnn
    }

    pub fn out(&self) -> &Fnn {
        &self.out
    }

    pub fn colour_width(&self) -> usize {
        self.mpnn.input_width() - self.mpnn.output_width()
    }
}

/// Two MPNNs fused per node by a cell: `M1` reads the labelled snapshot,
/// `M2` the snapshot relabelled with the previous cell states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TandGTgnn {
    m1: Mpnn,
    m2: Mpnn,
    cell: Fnn,
    out: Fnn,
}

impl TandGTgnn {
    pub fn new(m1: Mpnn, m2: Mpnn, cell: Fnn, out: Fnn) -> Result<Self, TgnnError> {
        if m1.depth() != m2.depth() {
            return Err(TgnnError::Invariant(format!(
                "M1 and M2 need equal layer counts ({} vs {})",
                m1.depth(),
                m2.depth()
            )));
        }
        let fused = m1.output_width() + m2.output_width();
        if cell.input_width() != fused {
            return Err(mismatch("cell input (M1 || M2)", fused, cell.input_width()));
        }
        if m2.input_width() != cell.output_width() {
            return Err(mismatch("M2 input (carried cell state)", cell.output_width(), m2.input_width()));
        }
        check_out(&out, cell.output_width())?;
        Ok(TandGTgnn { m1, m2, cell, out })
    }

    pub fn m1(&self) -> &Mpnn {
        &self.m1
    }

    pub fn m2(&self) -> &Mpnn {
        &self.m2
    }

    pub fn cell(&self) -> &Fnn {
        &self.cell
    }

    pub fn out(&self) -> &Fnn {
        &self.out
    }

    pub fn colour_width(&self) -> usize {
        self.m1.input_width()
    }
}

/// Sign convention for the time difference fed to the encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaConvention {
    /// `t_h - t_j`, non-positive
    #[default]
    PastMinusCurrent,
    /// `t_j - t_h`, non-negative
    CurrentMinusPast,
}

impl DeltaConvention {
    pub fn name(self) -> &'static str {
        match self {
            DeltaConvention::PastMinusCurrent => "past_minus_current",
            DeltaConvention::CurrentMinusPast => "current_minus_past",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "past_minus_current" => Some(DeltaConvention::PastMinusCurrent),
            "current_minus_past" => Some(DeltaConvention::CurrentMinusPast),
            _ => None,
        }
    }

    pub fn delta(self, past: Q, current: Q) -> Q {
        match self {
            DeltaConvention::PastMinusCurrent => past - current,
            DeltaConvention::CurrentMinusPast => current - past,
        }
    }
}

/// One message-passing pass over all (node, snapshot) pairs; messages carry
/// an encoding of the time difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalTgnn {
    mpnn: Mpnn,
    enc: Time2Vec,
    out: Fnn,
    delta: DeltaConvention,
}

impl GlobalTgnn {
    pub fn new(mpnn: Mpnn, enc: Time2Vec, out: Fnn, delta: DeltaConvention) -> Result<Self, TgnnError> {
        for l in mpnn.layers() {
            if !matches!(l.agg(), crate::nn::Aggregation::SumMsg(_)) {
                return Err(TgnnError::Invariant("every global layer aggregates through msg".into()));
            }
            if l.msg_extra_width() != enc.width() {
                return Err(mismatch("msg input (state || time features)", l.state_width() + enc.width(), l.state_width() + l.msg_extra_width()));
            }
        }
        check_out(&out, mpnn.output_width())?;
        Ok(GlobalTgnn { mpnn, enc, out, delta })
    }

    pub fn mpnn(&self) -> &Mpnn {
        &self.mpnn
    }

    pub fn encoder(&self) -> &Time2Vec {
        &self.enc
    }

    pub fn out(&self) -> &Fnn {
        &self.out
    }

    pub fn delta_convention(&self) -> DeltaConvention {
        self.delta
    }

    pub fn colour_width(&self) -> usize {
        self.mpnn.input_width()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TgnnModel {
    Recursive(RecursiveTgnn),
    TandG(TandGTgnn),
    Global(GlobalTgnn),
}

/// The trace of any architecture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelRun {
    Recursive(RecursiveRun),
    TandG(TandGRun),
    Global(GlobalRun),
}

impl ModelRun {
    /// `scalars()[t][v]`: output for the graph pointed at `(v, t)`.
    pub fn scalars(&self) -> &[Vec<Q>] {
        match self {
            ModelRun::Recursive(r) => &r.scalars,
            ModelRun::TandG(r) => &r.scalars,
            ModelRun::Global(r) => &r.scalars,
        }
    }

    /// Every hidden value of the trace, in no particular order.
    pub fn hidden_values(&self) -> Box<dyn Iterator<Item = &Q> + '_> {
        match self {
            ModelRun::Recursive(r) => flat(&r.steps),
            ModelRun::TandG(r) => Box::new(
                flat(&r.m1)
                    .chain(flat(&r.m2))
                    .chain(r.cell.iter().flatten().flatten().flatten()),
            ),
            ModelRun::Global(r) => Box::new(r.states.iter().flatten().flatten().flatten()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        runtime::run_to_json(self)
    }
}

fn flat(runs: &[crate::nn::MpnnRun]) -> Box<dyn Iterator<Item = &Q> + '_> {
    Box::new(runs.iter().flat_map(|r| r.states.iter().flatten().flatten()))
}

impl TgnnModel {
    pub fn arch(&self) -> &'static str {
        match self {
            TgnnModel::Recursive(_) => "recursive",
            TgnnModel::TandG(_) => "tandg",
            TgnnModel::Global(_) => "global",
        }
    }

    pub fn colour_width(&self) -> usize {
        match self {
            TgnnModel::Recursive(t) => t.colour_width(),
            TgnnModel::TandG(t) => t.colour_width(),
            TgnnModel::Global(t) => t.colour_width(),
        }
    }

    pub fn run(&self, tg: &TemporalGraph) -> Result<ModelRun, TgnnError> {
        Ok(match self {
            TgnnModel::Recursive(t) => ModelRun::Recursive(run_recursive(t, tg)?),
            TgnnModel::TandG(t) => ModelRun::TandG(run_tandg(t, tg)?),
            TgnnModel::Global(t) => ModelRun::Global(run_global(t, tg)?),
        })
    }
}

/// Binary decision: 1 iff the scalar is at least 1/2.
pub fn classify(x: Q) -> u8 {
    (x >= frac(1, 2)) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn threshold() {
        assert_eq!(classify(int(0)), 0);
        assert_eq!(classify(int(1)), 1);
        assert_eq!(classify(frac(1, 2)), 1);
        assert_eq!(classify(frac(1, 4)), 0);
    }

    #[test]
    fn invariants_are_enforced() {
        let m1 = Mpnn::identity(2, 1);
        let m2 = Mpnn::identity(2, 2);
        let cell = Fnn::identity(4, crate::nn::Activation::TrRelu);
        let out = Fnn::single(crate::nn::FnnLayer::zeros(4, 1, crate::nn::Activation::TrRelu));
        assert!(matches!(
            TandGTgnn::new(m1, m2, cell, out),
            Err(TgnnError::Invariant(_))
        ));
    }
}
