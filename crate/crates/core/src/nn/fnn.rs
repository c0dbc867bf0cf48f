use super::NnError;
use crate::rational::{tr_relu, Q};
use num_traits::{One, ToPrimitive, Zero};

/// Resolution of the rational stand-in for the periodic activation.
const PERIODIC_DENOMINATOR: i64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Activation {
    TrRelu,
    /// No activation; used for re-layout and padding layers.
    Identity,
    /// Sine, rounded to the nearest multiple of 2^-10 so that evaluation
    /// stays exact over rationals. Only time2vec slots use it.
    Sin,
}

impl Activation {
    pub fn apply(self, x: Q) -> Q {
        match self {
            Activation::TrRelu => tr_relu(x),
            Activation::Identity => x,
            Activation::Sin => periodic(x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::TrRelu => "trrelu",
            Activation::Identity => "none",
            Activation::Sin => "sin",
        }
    }

    pub fn from_name(s: &str) -> Option<Activation> {
        match s {
            "trrelu" => Some(Activation::TrRelu),
            "none" => Some(Activation::Identity),
            "sin" => Some(Activation::Sin),
            _ => None,
        }
    }
}

pub(crate) fn periodic(x: Q) -> Q {
    let f = x.numer().to_f64().unwrap_or(0.0) / x.denom().to_f64().unwrap_or(1.0);
    Q::new((f.sin() * PERIODIC_DENOMINATOR as f64).round() as i64, PERIODIC_DENOMINATOR)
}

/// One affine map followed by an activation: `act(W x + b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnnLayer {
    weights: Vec<Vec<Q>>,
    bias: Vec<Q>,
    act: Activation,
    in_width: usize,
    // nonzero entries per row
    sparse: Vec<Vec<(usize, Q)>>,
}

impl FnnLayer {
    pub fn new(in_width: usize, weights: Vec<Vec<Q>>, bias: Vec<Q>, act: Activation) -> Result<Self, NnError> {
        if weights.is_empty() {
            return Err(NnError::EmptyNetwork);
        }
        if bias.len() != weights.len() {
            return Err(NnError::DimensionMismatch {
                context: "bias length",
                expected: weights.len(),
                found: bias.len(),
            });
        }
        if let Some(row) = weights.iter().find(|r| r.len() != in_width) {
            return Err(NnError::DimensionMismatch {
                context: "weight row length",
                expected: in_width,
                found: row.len(),
            });
        }
        let sparse = weights
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(j, w)| (j, *w))
                    .collect()
            })
            .collect();
        Ok(FnnLayer {
            weights,
            bias,
            act,
            in_width,
            sparse,
        })
    }

    /// All-zero layer of the given shape.
    pub fn zeros(in_width: usize, out_width: usize, act: Activation) -> Self {
        Self::new(
            in_width,
            vec![vec![Q::zero(); in_width]; out_width],
            vec![Q::zero(); out_width],
            act,
        )
        .expect("well-formed shape")
    }

    /// Builds a layer from `(row, column, weight)` triples.
    pub fn from_entries(
        in_width: usize,
        out_width: usize,
        entries: impl IntoIterator<Item = (usize, usize, Q)>,
        bias: impl IntoIterator<Item = (usize, Q)>,
        act: Activation,
    ) -> Self {
        let mut w = vec![vec![Q::zero(); in_width]; out_width];
        let mut b = vec![Q::zero(); out_width];
        for (r, c, x) in entries {
            w[r][c] += x;
        }
        for (r, x) in bias {
            b[r] += x;
        }
        Self::new(in_width, w, b, act).expect("well-formed shape")
    }

    pub fn in_width(&self) -> usize {
        self.in_width
    }

    pub fn out_width(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<Q>] {
        &self.weights
    }

    pub fn bias(&self) -> &[Q] {
        &self.bias
    }

    pub fn activation(&self) -> Activation {
        self.act
    }

    pub(crate) fn sparse_rows(&self) -> &[Vec<(usize, Q)>] {
        &self.sparse
    }

    fn eval(&self, x: &[Q]) -> Vec<Q> {
        self.sparse
            .iter()
            .zip(&self.bias)
            .map(|(row, b)| {
                let pre = row.iter().fold(*b, |acc, &(j, w)| {
                    if w.is_one() {
                        acc + x[j]
                    } else {
                        acc + w * x[j]
                    }
                });
                self.act.apply(pre)
            })
            .collect()
    }
}

/// A feedforward network: layers applied in sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fnn {
    layers: Vec<FnnLayer>,
}

impl Fnn {
    pub fn new(layers: Vec<FnnLayer>) -> Result<Self, NnError> {
        if layers.is_empty() {
            return Err(NnError::EmptyNetwork);
        }
        for w in layers.windows(2) {
            if w[0].out_width() != w[1].in_width() {
                return Err(NnError::DimensionMismatch {
                    context: "adjacent FNN layers",
                    expected: w[0].out_width(),
                    found: w[1].in_width(),
                });
            }
        }
        Ok(Fnn { layers })
    }

    pub fn single(layer: FnnLayer) -> Self {
        Fnn { layers: vec![layer] }
    }

    /// `act(x)` on every coordinate (identity weights, zero bias).
    pub fn identity(width: usize, act: Activation) -> Self {
        Fnn::single(FnnLayer::from_entries(
            width,
            width,
            (0..width).map(|i| (i, i, Q::one())),
            [],
            act,
        ))
    }

    pub fn layers(&self) -> &[FnnLayer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].in_width()
    }

    pub fn output_width(&self) -> usize {
        self.layers.last().expect("non-empty").out_width()
    }

    pub fn eval(&self, x: &[Q]) -> Result<Vec<Q>, NnError> {
        if x.len() != self.input_width() {
            return Err(NnError::DimensionMismatch {
                context: "FNN input",
                expected: self.input_width(),
                found: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Q]) -> Vec<Q> {
        let mut cur = self.layers[0].eval(x);
        for l in &self.layers[1..] {
            cur = l.eval(&cur);
        }
        cur
    }

    /// Output of every layer in order; the last entry is the network output.
    pub fn eval_trace(&self, x: &[Q]) -> Result<Vec<Vec<Q>>, NnError> {
        if x.len() != self.input_width() {
            return Err(NnError::DimensionMismatch {
                context: "FNN input",
                expected: self.input_width(),
                found: x.len(),
            });
        }
        let mut out: Vec<Vec<Q>> = Vec::with_capacity(self.depth());
        for l in &self.layers {
            let next = l.eval(out.last().map_or(x, |v| v.as_slice()));
            out.push(next);
        }
        Ok(out)
    }

    /// Appends pass-through layers until the network has `depth` layers.
    /// They reuse the last activation, which is exact for trReLU since its
    /// outputs already lie in `[0, 1]`.
    pub fn padded_to(&self, depth: usize) -> Fnn {
        let mut layers = self.layers.clone();
        let act = match self.layers.last().expect("non-empty").activation() {
            Activation::Sin => Activation::Identity,
            a => a,
        };
        while layers.len() < depth {
            layers.push(Fnn::identity(self.output_width(), act).layers[0].clone());
        }
        Fnn { layers }
    }

    /// Side-by-side composition. The combined input has width `in_width`;
    /// `a` reads the columns listed in `a_cols` and `b` those in `b_cols`.
    /// Output is `a(..) || b(..)`.
    pub fn parallel(a: &Fnn, b: &Fnn, in_width: usize, a_cols: &[usize], b_cols: &[usize]) -> Result<Fnn, NnError> {
        if a_cols.len() != a.input_width() || b_cols.len() != b.input_width() {
            return Err(NnError::DimensionMismatch {
                context: "parallel FNN column maps",
                expected: a.input_width() + b.input_width(),
                found: a_cols.len() + b_cols.len(),
            });
        }
        let depth = a.depth().max(b.depth());
        let (a, b) = (a.padded_to(depth), b.padded_to(depth));
        let mut layers = Vec::with_capacity(depth);
        for (k, (la, lb)) in a.layers.iter().zip(&b.layers).enumerate() {
            let (acols, bcols): (Vec<usize>, Vec<usize>) = if k == 0 {
                (a_cols.to_vec(), b_cols.to_vec())
            } else {
                (
                    (0..la.in_width()).collect(),
                    (la.in_width()..la.in_width() + lb.in_width()).collect(),
                )
            };
            let width = if k == 0 { in_width } else { la.in_width() + lb.in_width() };
            if la.activation() != lb.activation() {
                return Err(NnError::Unsupported("parallel layers with different activations"));
            }
            let mut entries = Vec::new();
            for (r, row) in la.sparse_rows().iter().enumerate() {
                entries.extend(row.iter().map(|&(j, w)| (r, acols[j], w)));
            }
            let off = la.out_width();
            for (r, row) in lb.sparse_rows().iter().enumerate() {
                entries.extend(row.iter().map(|&(j, w)| (off + r, bcols[j], w)));
            }
            let bias = la
                .bias()
                .iter()
                .chain(lb.bias())
                .copied()
                .enumerate()
                .collect::<Vec<_>>();
            layers.push(FnnLayer::from_entries(
                width,
                off + lb.out_width(),
                entries,
                bias,
                la.activation(),
            ));
        }
        Fnn::new(layers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::gadgets::not_gate;
    use crate::rational::{frac, int};

    #[test]
    fn identity_layer() {
        let f = Fnn::identity(3, Activation::TrRelu);
        assert_eq!(f.eval(&[int(0), int(1), int(0)]).unwrap(), vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn upper_clamp() {
        let f = Fnn::single(FnnLayer::new(1, vec![vec![int(1)]], vec![int(0)], Activation::TrRelu).unwrap());
        assert_eq!(f.eval(&[int(2)]).unwrap(), vec![int(1)]);
    }

    #[test]
    fn not_gadget() {
        let f = not_gate();
        assert_eq!(f.eval(&[int(0)]).unwrap(), vec![int(1)]);
        assert_eq!(f.eval(&[int(1)]).unwrap(), vec![int(0)]);
    }

    #[test]
    fn dimension_checks() {
        let f = Fnn::identity(2, Activation::TrRelu);
        assert!(matches!(f.eval(&[int(1)]), Err(NnError::DimensionMismatch { .. })));
        assert!(FnnLayer::new(2, vec![vec![int(1)]], vec![int(0)], Activation::TrRelu).is_err());
        let l1 = FnnLayer::zeros(2, 3, Activation::TrRelu);
        let l2 = FnnLayer::zeros(2, 1, Activation::TrRelu);
        assert!(Fnn::new(vec![l1, l2]).is_err());
    }

    #[test]
    fn parallel_blocks_do_not_interact() {
        let a = not_gate();
        let b = Fnn::new(vec![
            FnnLayer::new(1, vec![vec![frac(1, 2)]], vec![int(0)], Activation::TrRelu).unwrap(),
            FnnLayer::new(1, vec![vec![int(2)]], vec![int(0)], Activation::TrRelu).unwrap(),
        ])
        .unwrap();
        let p = Fnn::parallel(&a, &b, 2, &[1], &[0]).unwrap();
        assert_eq!(p.depth(), 2);
        let out = p.eval(&[frac(1, 2), int(0)]).unwrap();
        assert_eq!(out, vec![int(1), frac(1, 2)]);
    }

    #[test]
    fn periodic_is_rounded_sine() {
        assert_eq!(periodic(int(0)), int(0));
        assert_eq!(periodic(frac(157_079, 100_000)), int(1));
    }
}
