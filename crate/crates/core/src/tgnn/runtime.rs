use super::{mismatch, GlobalTgnn, ModelRun, RecursiveTgnn, TandGTgnn, TgnnError};
use crate::nn::{add_into, MpnnRun};
use crate::rational::{to_json, Q};
use crate::tgraph::TemporalGraph;
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveRun {
    /// One MPNN application per snapshot; layer 0 is `colours || carried`.
    pub steps: Vec<MpnnRun>,
    /// `scalars[t][v]`
    pub scalars: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TandGRun {
    pub m1: Vec<MpnnRun>,
    pub m2: Vec<MpnnRun>,
    /// `cell[t][v]`: output of every cell layer; the last is the carried state.
    pub cell: Vec<Vec<Vec<Vec<Q>>>>,
    pub scalars: Vec<Vec<Q>>,
}

impl TandGRun {
    /// Carried state of `v` after snapshot `t`.
    pub fn state(&self, t: usize, v: usize) -> &[Q] {
        self.cell[t][v].last().expect("cell has a layer")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalRun {
    /// `states[layer][t][v]`, layer 0 holding the labels.
    pub states: Vec<Vec<Vec<Vec<Q>>>>,
    pub scalars: Vec<Vec<Q>>,
}

fn check_width(tg: &TemporalGraph, width: usize) -> Result<(), TgnnError> {
    if tg.label_width() != width {
        return Err(mismatch("graph label width", width, tg.label_width()));
    }
    Ok(())
}

pub fn run_recursive(t: &RecursiveTgnn, tg: &TemporalGraph) -> Result<RecursiveRun, TgnnError> {
    check_width(tg, t.colour_width())?;
    let hidden = t.mpnn().output_width();
    let mut carried = vec![vec![Q::zero(); hidden]; tg.node_count()];
    let mut steps = Vec::with_capacity(tg.len());
    let mut scalars = Vec::with_capacity(tg.len());
    for snap in tg.snapshots() {
        let input = snap
            .graph
            .labels()
            .iter()
            .zip(&carried)
            .map(|(c, h)| c.iter().chain(h).copied().collect())
            .collect();
        let run = t.mpnn().run_with_labels(&snap.graph, input)?;
        carried = run.output().to_vec();
        scalars.push(carried.iter().map(|h| t.out().eval_unchecked(h)[0]).collect());
        steps.push(run);
    }
    Ok(RecursiveRun { steps, scalars })
}

pub fn run_tandg(t: &TandGTgnn, tg: &TemporalGraph) -> Result<TandGRun, TgnnError> {
    check_width(tg, t.colour_width())?;
    let carried_width = t.cell().output_width();
    let mut carried = vec![vec![Q::zero(); carried_width]; tg.node_count()];
    let mut run = TandGRun {
        m1: Vec::with_capacity(tg.len()),
        m2: Vec::with_capacity(tg.len()),
        cell: Vec::with_capacity(tg.len()),
        scalars: Vec::with_capacity(tg.len()),
    };
    for snap in tg.snapshots() {
        let a = t.m1().run_with_labels(&snap.graph, snap.graph.labels().to_vec())?;
        let b = t.m2().run_with_labels(&snap.graph, carried)?;
        let cell: Vec<Vec<Vec<Q>>> = a
            .output()
            .iter()
            .zip(b.output())
            .map(|(x, y)| {
                let fused: Vec<Q> = x.iter().chain(y).copied().collect();
                t.cell().eval_trace(&fused)
            })
            .collect::<Result<_, _>>()?;
        carried = cell.iter().map(|c| c.last().expect("non-empty").clone()).collect();
        run.scalars.push(carried.iter().map(|h| t.out().eval_unchecked(h)[0]).collect());
        run.m1.push(a);
        run.m2.push(b);
        run.cell.push(cell);
    }
    Ok(run)
}

pub fn run_global(t: &GlobalTgnn, tg: &TemporalGraph) -> Result<GlobalRun, TgnnError> {
    check_width(tg, t.colour_width())?;
    let steps = tg.len();
    let times: Vec<Q> = (0..steps).map(|i| tg.time(i)).collect();
    // enc[h][j] for h <= j
    let enc: Vec<Vec<Vec<Q>>> = (0..steps)
        .map(|h| {
            (0..steps)
                .map(|j| {
                    if h <= j {
                        t.encoder().encode(t.delta_convention().delta(times[h], times[j]))
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    let mut states = vec![tg.snapshots().iter().map(|s| s.graph.labels().to_vec()).collect::<Vec<_>>()];
    for layer in t.mpnn().layers() {
        let cur = states.last().expect("non-empty");
        let width = layer.agg_width();
        let mut next = Vec::with_capacity(steps);
        for j in 0..steps {
            // messages from (u, t_h) depend on (u, h, j) only through enc[h][j]
            let mut aggs = vec![vec![Q::zero(); width]; tg.node_count()];
            for h in 0..=j {
                let g = tg.snapshot(h);
                let msgs: Vec<Option<Vec<Q>>> = (0..g.node_count())
                    .map(|u| (!g.adjacency()[u].is_empty()).then(|| layer.message(&cur[h][u], &enc[h][j])))
                    .collect();
                for (v, agg) in aggs.iter_mut().enumerate() {
                    for &u in &g.adjacency()[v] {
                        add_into(agg, msgs[u].as_ref().expect("u has a neighbour"));
                    }
                }
            }
            next.push(
                aggs.iter()
                    .enumerate()
                    .map(|(v, agg)| layer.combine(&cur[j][v], agg))
                    .collect(),
            );
        }
        states.push(next);
    }
    let last = states.last().expect("non-empty");
    let scalars = last
        .iter()
        .map(|row| row.iter().map(|h| t.out().eval_unchecked(h)[0]).collect())
        .collect();
    Ok(GlobalRun { states, scalars })
}

fn matrix(rows: &[Vec<Q>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(to_json).collect()))
            .collect(),
    )
}

fn mpnn_runs(runs: &[MpnnRun]) -> Value {
    Value::Array(
        runs.iter()
            .map(|r| Value::Array(r.states.iter().map(|l| matrix(l)).collect()))
            .collect(),
    )
}

pub(super) fn run_to_json(run: &ModelRun) -> Value {
    match run {
        ModelRun::Recursive(r) => json!({
            "arch": "recursive",
            "steps": mpnn_runs(&r.steps),
            "scalars": matrix(&r.scalars),
        }),
        ModelRun::TandG(r) => json!({
            "arch": "tandg",
            "m1": mpnn_runs(&r.m1),
            "m2": mpnn_runs(&r.m2),
            "cell": r.cell.iter().map(|t| t.iter().map(|v| matrix(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "scalars": matrix(&r.scalars),
        }),
        ModelRun::Global(r) => json!({
            "arch": "global",
            "states": r.states.iter().map(|l| l.iter().map(|t| matrix(t)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "scalars": matrix(&r.scalars),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{Activation, Aggregation, Fnn, FnnLayer, Mpnn, MpnnLayer, Time2Vec};
    use crate::rational::int;
    use crate::tgnn::DeltaConvention;
    use crate::tgraph::StaticGraph;

    fn single_node(labels: &[i64]) -> TemporalGraph {
        TemporalGraph::new(
            labels
                .iter()
                .enumerate()
                .map(|(i, &c)| (StaticGraph::new(1, [], vec![vec![int(c)]]).unwrap(), int(i as i64 + 1)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn recursion_carries_state() {
        // state = colour || carried; output copies the colour
        let comb = Fnn::single(FnnLayer::from_entries(4, 1, [(0, 0, int(1))], [], Activation::Identity));
        let mpnn = Mpnn::new(vec![MpnnLayer::new(2, comb, Aggregation::Sum).unwrap()]).unwrap();
        let out = Fnn::identity(1, Activation::TrRelu);
        let t = RecursiveTgnn::new(mpnn, out).unwrap();
        let run = run_recursive(&t, &single_node(&[1, 0])).unwrap();
        assert_eq!(run.steps[0].states[0], vec![vec![int(1), int(0)]]);
        assert_eq!(run.steps[1].states[0], vec![vec![int(0), int(1)]]);
        assert_eq!(run.scalars, vec![vec![int(1)], vec![int(0)]]);
    }

    #[test]
    fn projection_cell_is_per_snapshot() {
        let m1 = Mpnn::new(vec![MpnnLayer::pass_through(1, Activation::TrRelu)]).unwrap();
        let m2 = Mpnn::new(vec![MpnnLayer::pass_through(1, Activation::TrRelu)]).unwrap();
        let cell = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 0, int(1))], [], Activation::TrRelu));
        let t = TandGTgnn::new(m1, m2, cell, Fnn::identity(1, Activation::TrRelu)).unwrap();
        let run = run_tandg(&t, &single_node(&[1, 0, 1])).unwrap();
        assert_eq!(run.scalars, vec![vec![int(1)], vec![int(0)], vec![int(1)]]);
        // at t_1, M2 sees zero labels
        assert_eq!(run.m2[0].states[0], vec![vec![int(0)]]);
    }

    #[test]
    fn isolated_global_node_aggregates_zero() {
        // comb reads only the aggregate
        let msg = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 0, int(1)), (0, 1, int(-1))], [(0, int(1))], Activation::TrRelu));
        let comb = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 1, int(1))], [(0, int(1) / int(2))], Activation::Identity));
        let mpnn = Mpnn::new(vec![MpnnLayer::new(1, comb, Aggregation::SumMsg(msg)).unwrap()]).unwrap();
        let t = GlobalTgnn::new(mpnn, Time2Vec::affine_identity(), Fnn::identity(1, Activation::Identity), DeltaConvention::default())
            .unwrap();
        let run = run_global(&t, &single_node(&[1, 1, 0])).unwrap();
        assert!(run.scalars.iter().flatten().all(|x| *x == int(1) / int(2)));
    }

    #[test]
    fn global_sees_neighbours_past_with_delta() {
        // two nodes joined only at t_1; message = trReLU(x + enc + 1) so that
        // x=1 at delta 0 or -1 passes
        let tg = TemporalGraph::new(vec![
            (StaticGraph::new(2, [(0, 1)], vec![vec![int(0)], vec![int(1)]]).unwrap(), int(1)),
            (StaticGraph::new(2, [], vec![vec![int(0)], vec![int(0)]]).unwrap(), int(2)),
        ])
        .unwrap();
        let msg = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 0, int(1)), (0, 1, int(1))], [], Activation::TrRelu));
        let comb = Fnn::single(FnnLayer::from_entries(2, 1, [(0, 1, int(1))], [], Activation::TrRelu));
        let mpnn = Mpnn::new(vec![MpnnLayer::new(1, comb, Aggregation::SumMsg(msg)).unwrap()]).unwrap();
        let out = Fnn::identity(1, Activation::Identity);
        let past = GlobalTgnn::new(mpnn.clone(), Time2Vec::affine_identity(), out.clone(), DeltaConvention::PastMinusCurrent).unwrap();
        let run = run_global(&past, &tg).unwrap();
        // delta 0 at t_1, -1 at t_2 (blocked)
        assert_eq!(run.scalars, vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
        let cur = GlobalTgnn::new(mpnn, Time2Vec::affine_identity(), out, DeltaConvention::CurrentMinusPast).unwrap();
        let run = run_global(&cur, &tg).unwrap();
        // delta +1 lets even the zero state through
        assert_eq!(run.scalars, vec![vec![int(1), int(0)], vec![int(1), int(1)]]);
    }
}
