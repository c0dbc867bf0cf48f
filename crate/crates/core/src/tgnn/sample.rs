//! Seeded random models with weights on a small rational grid.

use super::{DeltaConvention, GlobalTgnn, RecursiveTgnn, TandGTgnn, TgnnModel};
use crate::nn::{Activation, Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer, Time2Vec};
use crate::rational::{frac, int, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClass {
    Recursive,
    TandG,
    Global,
}

impl ModelClass {
    pub fn name(self) -> &'static str {
        match self {
            ModelClass::Recursive => "recursive",
            ModelClass::TandG => "tandg",
            ModelClass::Global => "global",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleDims {
    pub colours: usize,
    pub hidden: usize,
    pub layers: usize,
    /// time2vec slots (global models only)
    pub time_width: usize,
}

impl Default for SampleDims {
    fn default() -> Self {
        SampleDims {
            colours: 2,
            hidden: 3,
            layers: 2,
            time_width: 2,
        }
    }
}

fn grid() -> [Q; 7] {
    [int(-2), int(-1), frac(-1, 2), int(0), frac(1, 2), int(1), int(2)]
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn value(&mut self) -> Q {
        *grid().choose(&mut self.rng).expect("non-empty grid")
    }

    fn vector(&mut self, len: usize) -> Vec<Q> {
        (0..len).map(|_| self.value()).collect()
    }

    fn fnn(&mut self, input: usize, output: usize) -> Fnn {
        let w = (0..output).map(|_| self.vector(input)).collect();
        let b = self.vector(output);
        Fnn::single(FnnLayer::new(input, w, b, Activation::TrRelu).expect("sampled shape"))
    }

    /// Plain sum-aggregation MPNN `input -> hidden` with `layers` layers.
    fn mpnn(&mut self, input: usize, hidden: usize, layers: usize) -> Mpnn {
        let mut out = Vec::with_capacity(layers);
        let mut state = input;
        for _ in 0..layers {
            let comb = self.fnn(2 * state, hidden);
            out.push(MpnnLayer::new(state, comb, Aggregation::Sum).expect("sampled shape"));
            state = hidden;
        }
        Mpnn::new(out).expect("non-empty")
    }

    fn msg_mpnn(&mut self, input: usize, hidden: usize, layers: usize, time_width: usize) -> Mpnn {
        let mut out = Vec::with_capacity(layers);
        let mut state = input;
        for _ in 0..layers {
            let msg = self.fnn(state + time_width, hidden);
            let comb = self.fnn(state + hidden, hidden);
            out.push(MpnnLayer::new(state, comb, Aggregation::SumMsg(msg)).expect("sampled shape"));
            state = hidden;
        }
        Mpnn::new(out).expect("non-empty")
    }
}

/// Time-and-graph model with a single-layer cell.
pub fn sample_tandg(dims: &SampleDims, seed: u64) -> TandGTgnn {
    let mut s = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let (k, h, l) = (dims.colours.max(1), dims.hidden.max(1), dims.layers.max(1));
    let m1 = s.mpnn(k, h, l);
    let m2 = s.mpnn(h, h, l);
    let cell = s.fnn(2 * h, h);
    let out = s.fnn(h, 1);
    TandGTgnn::new(m1, m2, cell, out).expect("sampled shapes agree")
}

pub fn sample_model(class: ModelClass, dims: &SampleDims, seed: u64) -> TgnnModel {
    let (k, h, l) = (dims.colours.max(1), dims.hidden.max(1), dims.layers.max(1));
    match class {
        ModelClass::TandG => TgnnModel::TandG(sample_tandg(dims, seed)),
        ModelClass::Recursive => {
            let mut s = Sampler {
                rng: ChaCha8Rng::seed_from_u64(seed),
            };
            let mpnn = s.mpnn(k + h, h, l);
            let out = s.fnn(h, 1);
            TgnnModel::Recursive(RecursiveTgnn::new(mpnn, out).expect("sampled shapes agree"))
        }
        ModelClass::Global => {
            let mut s = Sampler {
                rng: ChaCha8Rng::seed_from_u64(seed),
            };
            let tw = dims.time_width.max(1);
            let mpnn = s.msg_mpnn(k, h, l, tw);
            let w = s.vector(tw);
            let b = s.vector(tw);
            // a non-zero slot-0 weight keeps the time signal visible
            let w = std::iter::once(if w[0] == int(0) { int(1) } else { w[0] })
                .chain(w[1..].iter().copied())
                .collect();
            let out = s.fnn(h, 1);
            let delta = if s.rng.gen_bool(0.5) {
                DeltaConvention::PastMinusCurrent
            } else {
                DeltaConvention::CurrentMinusPast
            };
            TgnnModel::Global(GlobalTgnn::new(mpnn, Time2Vec::new(w, b), out, delta).expect("sampled shapes agree"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let d = SampleDims::default();
        for class in [ModelClass::Recursive, ModelClass::TandG, ModelClass::Global] {
            assert_eq!(sample_model(class, &d, 3), sample_model(class, &d, 3));
            assert_ne!(sample_model(class, &d, 3), sample_model(class, &d, 4));
            assert_eq!(sample_model(class, &d, 3).colour_width(), 2);
        }
        let t = sample_tandg(&d, 9);
        assert_eq!(t.m1().depth(), t.m2().depth());
        assert_eq!(t.cell().depth(), 1);
    }
}
