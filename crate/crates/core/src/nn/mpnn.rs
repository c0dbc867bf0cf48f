use super::{Activation, Fnn, NnError};
use crate::rational::Q;
use crate::tgraph::StaticGraph;
use num_traits::Zero;

/// Neighbourhood aggregation of one message-passing layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Aggregation {
    /// Entrywise sum of neighbour states.
    Sum,
    /// Entrywise sum of `msg(neighbour state || extra features)`.
    SumMsg(Fnn),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpnnLayer {
    state_width: usize,
    comb: Fnn,
    agg: Aggregation,
}

/// Which network class a message-passing network falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MpnnClass {
    /// single-layer trReLU combinations, plain sum aggregation
    Plain,
    /// single-layer trReLU combinations, sum over a trReLU message network
    Msg,
    /// anything else (e.g. multi-layer combinations from composition)
    General,
}

impl MpnnLayer {
    /// `comb` reads `state || aggregate`.
    pub fn new(state_width: usize, comb: Fnn, agg: Aggregation) -> Result<Self, NnError> {
        let agg_width = match &agg {
            Aggregation::Sum => state_width,
            Aggregation::SumMsg(msg) => {
                if msg.input_width() < state_width {
                    return Err(NnError::DimensionMismatch {
                        context: "msg input",
                        expected: state_width,
                        found: msg.input_width(),
                    });
                }
                msg.output_width()
            }
        };
        if comb.input_width() != state_width + agg_width {
            return Err(NnError::DimensionMismatch {
                context: "comb input (state + aggregate)",
                expected: state_width + agg_width,
                found: comb.input_width(),
            });
        }
        Ok(MpnnLayer { state_width, comb, agg })
    }

    /// Passes the state through unchanged and ignores the aggregate.
    pub fn identity(width: usize) -> Self {
        Self::pass_through(width, Activation::Identity)
    }

    /// `act(x)` on the state half, aggregate ignored.
    pub fn pass_through(width: usize, act: Activation) -> Self {
        let comb = Fnn::single(super::FnnLayer::from_entries(
            2 * width,
            width,
            (0..width).map(|i| (i, i, Q::from_integer(1))),
            [],
            act,
        ));
        MpnnLayer::new(width, comb, Aggregation::Sum).expect("identity shape")
    }

    pub fn state_width(&self) -> usize {
        self.state_width
    }

    pub fn output_width(&self) -> usize {
        self.comb.output_width()
    }

    pub fn agg_width(&self) -> usize {
        self.comb.input_width() - self.state_width
    }

    /// Width of the features appended to each neighbour state before `msg`.
    pub fn msg_extra_width(&self) -> usize {
        match &self.agg {
            Aggregation::Sum => 0,
            Aggregation::SumMsg(msg) => msg.input_width() - self.state_width,
        }
    }

    pub fn comb(&self) -> &Fnn {
        &self.comb
    }

    pub fn agg(&self) -> &Aggregation {
        &self.agg
    }

    pub fn message(&self, state: &[Q], extra: &[Q]) -> Vec<Q> {
        match &self.agg {
            Aggregation::Sum => state.to_vec(),
            Aggregation::SumMsg(msg) => {
                let mut x = Vec::with_capacity(state.len() + extra.len());
                x.extend_from_slice(state);
                x.extend_from_slice(extra);
                msg.eval_unchecked(&x)
            }
        }
    }

    pub fn combine(&self, state: &[Q], aggregate: &[Q]) -> Vec<Q> {
        let mut x = Vec::with_capacity(state.len() + aggregate.len());
        x.extend_from_slice(state);
        x.extend_from_slice(aggregate);
        self.comb.eval_unchecked(&x)
    }

    /// One synchronous update over a static graph.
    pub(crate) fn step(&self, g: &StaticGraph, states: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let width = self.agg_width();
        (0..g.node_count())
            .map(|v| {
                let mut agg = vec![Q::zero(); width];
                for &u in &g.adjacency()[v] {
                    let m = self.message(&states[u], &[]);
                    add_into(&mut agg, &m);
                }
                self.combine(&states[v], &agg)
            })
            .collect()
    }
}

pub(crate) fn add_into(acc: &mut [Q], x: &[Q]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += *b;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mpnn {
    layers: Vec<MpnnLayer>,
}

/// Every intermediate state of one MPNN application: `states[layer][node]`,
/// with layer 0 holding the input labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpnnRun {
    pub states: Vec<Vec<Vec<Q>>>,
}

impl MpnnRun {
    pub fn output(&self) -> &[Vec<Q>] {
        self.states.last().expect("at least the input layer")
    }
}

impl Mpnn {
    pub fn new(layers: Vec<MpnnLayer>) -> Result<Self, NnError> {
        if layers.is_empty() {
            return Err(NnError::EmptyNetwork);
        }
        for w in layers.windows(2) {
            if w[0].output_width() != w[1].state_width() {
                return Err(NnError::DimensionMismatch {
                    context: "adjacent MPNN layers",
                    expected: w[0].output_width(),
                    found: w[1].state_width(),
                });
            }
        }
        Ok(Mpnn { layers })
    }

    pub fn identity(width: usize, depth: usize) -> Self {
        Mpnn {
            layers: vec![MpnnLayer::identity(width); depth.max(1)],
        }
    }

    pub fn layers(&self) -> &[MpnnLayer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn input_width(&self) -> usize {
        self.layers[0].state_width()
    }

    pub fn output_width(&self) -> usize {
        self.layers.last().expect("non-empty").output_width()
    }

    pub fn class(&self) -> MpnnClass {
        let single = self.layers.iter().all(|l| {
            l.comb().depth() == 1 && l.comb().layers()[0].activation() == Activation::TrRelu
        });
        if !single {
            return MpnnClass::General;
        }
        let plain = self.layers.iter().all(|l| l.agg() == &Aggregation::Sum);
        let msg = self.layers.iter().all(|l| match l.agg() {
            Aggregation::SumMsg(m) => m.layers().iter().all(|x| x.activation() == Activation::TrRelu),
            Aggregation::Sum => false,
        });
        if plain {
            MpnnClass::Plain
        } else if msg {
            MpnnClass::Msg
        } else {
            MpnnClass::General
        }
    }

    /// Pads with pass-through layers at the end, reusing the last
    /// activation (exact for trReLU networks).
    pub fn padded_to(&self, depth: usize) -> Mpnn {
        let mut layers = self.layers.clone();
        let last = self.layers.last().expect("non-empty").comb();
        let act = match last.layers().last().expect("non-empty").activation() {
            Activation::Sin => Activation::Identity,
            a => a,
        };
        while layers.len() < depth {
            layers.push(MpnnLayer::pass_through(self.output_width(), act));
        }
        Mpnn { layers }
    }

    /// Runs on `g` with the given per-node input states instead of its labels.
    pub fn run_with_labels(&self, g: &StaticGraph, labels: Vec<Vec<Q>>) -> Result<MpnnRun, NnError> {
        if let Some(l) = labels.iter().find(|l| l.len() != self.input_width()) {
            return Err(NnError::DimensionMismatch {
                context: "MPNN input state",
                expected: self.input_width(),
                found: l.len(),
            });
        }
        if labels.len() != g.node_count() {
            return Err(NnError::DimensionMismatch {
                context: "MPNN input node count",
                expected: g.node_count(),
                found: labels.len(),
            });
        }
        if let Some(l) = self.layers.iter().find(|l| l.msg_extra_width() != 0) {
            return Err(NnError::DimensionMismatch {
                context: "msg expects extra features (use the global runtime)",
                expected: l.state_width(),
                found: l.state_width() + l.msg_extra_width(),
            });
        }
        let mut states = vec![labels];
        for layer in &self.layers {
            let next = layer.step(g, states.last().expect("non-empty"));
            states.push(next);
        }
        Ok(MpnnRun { states })
    }
}

/// Applies `m` to the graph's own labels.
pub fn run_mpnn(m: &Mpnn, g: &StaticGraph) -> Result<MpnnRun, NnError> {
    m.run_with_labels(g, g.labels().to_vec())
}

/// `b` after `a`.
pub fn serial_compose(a: &Mpnn, b: &Mpnn) -> Result<Mpnn, NnError> {
    if a.output_width() != b.input_width() {
        return Err(NnError::DimensionMismatch {
            context: "serial composition",
            expected: a.output_width(),
            found: b.input_width(),
        });
    }
    Mpnn::new(a.layers.iter().chain(&b.layers).cloned().collect())
}

/// Runs `a` on the first `a.input_width()` coordinates and `b` on the rest,
/// layer by layer, with block-diagonal weights. The shorter network is
/// padded with identity layers.
pub fn parallel_compose(a: &Mpnn, b: &Mpnn) -> Result<Mpnn, NnError> {
    let depth = a.depth().max(b.depth());
    let (a, b) = (a.padded_to(depth), b.padded_to(depth));
    let mut layers = Vec::with_capacity(depth);
    for (la, lb) in a.layers.iter().zip(&b.layers) {
        let (sa, sb) = (la.state_width(), lb.state_width());
        if la.msg_extra_width() != 0 || lb.msg_extra_width() != 0 {
            return Err(NnError::Unsupported("parallel composition of time-aware messages"));
        }
        let (agg, ga, gb) = match (la.agg(), lb.agg()) {
            (Aggregation::Sum, Aggregation::Sum) => (Aggregation::Sum, sa, sb),
            (x, y) => {
                let as_msg = |agg: &Aggregation, w: usize| match agg {
                    Aggregation::Sum => Fnn::identity(w, Activation::Identity),
                    Aggregation::SumMsg(m) => m.clone(),
                };
                let (ma, mb) = (as_msg(x, sa), as_msg(y, sb));
                let msg = Fnn::parallel(
                    &ma,
                    &mb,
                    sa + sb,
                    &(0..sa).collect::<Vec<_>>(),
                    &(sa..sa + sb).collect::<Vec<_>>(),
                )?;
                (Aggregation::SumMsg(msg), ma.output_width(), mb.output_width())
            }
        };
        // combined comb input: xa || xb || ya || yb
        let a_cols: Vec<usize> = (0..sa).chain(sa + sb..sa + sb + ga).collect();
        let b_cols: Vec<usize> = (sa..sa + sb).chain(sa + sb + ga..sa + sb + ga + gb).collect();
        let comb = Fnn::parallel(la.comb(), lb.comb(), sa + sb + ga + gb, &a_cols, &b_cols)?;
        layers.push(MpnnLayer::new(sa + sb, comb, agg)?);
    }
    Mpnn::new(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{Activation, FnnLayer};
    use crate::rational::int;

    /// comb(x, y) = trReLU(y) on one dimension
    fn read_aggregate() -> MpnnLayer {
        let comb = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 1, int(1))], [], Activation::TrRelu));
        MpnnLayer::new(1, comb, Aggregation::Sum).unwrap()
    }

    #[test]
    fn isolated_node_identity() {
        let g = StaticGraph::new(1, [], vec![vec![int(1), int(0)]]).unwrap();
        let run = run_mpnn(&Mpnn::identity(2, 1), &g).unwrap();
        assert_eq!(run.output(), &[vec![int(1), int(0)]]);
    }

    #[test]
    fn swap_via_aggregation() {
        let g = StaticGraph::new(2, [(0, 1)], vec![vec![int(1)], vec![int(0)]]).unwrap();
        let m = Mpnn::new(vec![read_aggregate()]).unwrap();
        let run = run_mpnn(&m, &g).unwrap();
        assert_eq!(run.output(), &[vec![int(0)], vec![int(1)]]);
        assert_eq!(run.states.len(), 2);
    }

    #[test]
    fn or_gadget_over_two_neighbours() {
        // brute force over the four label assignments of the two neighbours
        let m = Mpnn::new(vec![read_aggregate()]).unwrap();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let g = StaticGraph::new(3, [(0, 1), (0, 2)], vec![vec![int(0)], vec![int(a)], vec![int(b)]]).unwrap();
            let out = run_mpnn(&m, &g).unwrap();
            assert_eq!(out.output()[0], vec![int(a | b)]);
        }
    }

    #[test]
    fn empty_neighbourhood_aggregates_to_zero() {
        let g = StaticGraph::new(2, [], vec![vec![int(1)], vec![int(1)]]).unwrap();
        let m = Mpnn::new(vec![read_aggregate()]).unwrap();
        assert_eq!(run_mpnn(&m, &g).unwrap().output(), &[vec![int(0)], vec![int(0)]]);
    }

    #[test]
    fn compositions() {
        let g = StaticGraph::new(3, [(0, 1), (1, 2)], vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(0), int(0)]])
            .unwrap();
        let id = Mpnn::identity(1, 1);
        let p = parallel_compose(&id, &id).unwrap();
        assert_eq!(run_mpnn(&p, &g).unwrap().output(), g.labels());

        let m = Mpnn::new(vec![read_aggregate(), read_aggregate()]).unwrap();
        let s = serial_compose(&m, &Mpnn::identity(1, 1)).unwrap();
        let g1 = g.relabel(vec![vec![int(1)], vec![int(0)], vec![int(0)]]).unwrap();
        assert_eq!(run_mpnn(&s, &g1).unwrap().output(), run_mpnn(&m, &g1).unwrap().output());

        // parallel of a 2-layer and 1-layer network: blocks stay independent
        let id_tr = Mpnn::new(vec![MpnnLayer::pass_through(1, Activation::TrRelu)]).unwrap();
        let p = parallel_compose(&m, &id_tr).unwrap();
        let out = run_mpnn(&p, &g).unwrap();
        let left = run_mpnn(&m, &g.relabel(g.labels().iter().map(|l| vec![l[0]]).collect()).unwrap()).unwrap();
        for v in 0..3 {
            assert_eq!(out.output()[v][0], left.output()[v][0]);
            assert_eq!(out.output()[v][1], g.labels()[v][1]);
        }
    }

    #[test]
    fn width_mismatch() {
        let g = StaticGraph::new(1, [], vec![vec![int(1)]]).unwrap();
        assert!(matches!(
            run_mpnn(&Mpnn::identity(2, 1), &g),
            Err(NnError::DimensionMismatch { .. })
        ));
        assert!(serial_compose(&Mpnn::identity(2, 1), &Mpnn::identity(1, 1)).is_err());
    }
}
