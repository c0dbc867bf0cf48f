//! The worked example graphs: one satisfaction example and two
//! indistinguishability pairs.

use super::{PointedTemporalGraph, StaticGraph, TemporalGraph};
use crate::rational::int;

/// Builds a discrete temporal graph from node names, per-snapshot edge lists
/// and per-snapshot `(node, colour)` assignments (colours 1-based).
fn build(
    names: &[&str],
    width: usize,
    edges: &[&[(&str, &str)]],
    colours: &[&[(&str, usize)]],
) -> TemporalGraph {
    let idx = |n: &str| names.iter().position(|x| *x == n).expect("fixture node");
    let snapshots = edges
        .iter()
        .zip(colours)
        .enumerate()
        .map(|(i, (es, cs))| {
            let mut labels = vec![vec![int(0); width]; names.len()];
            for &(n, c) in cs.iter() {
                labels[idx(n)][c - 1] = int(1);
            }
            let g = StaticGraph::new(
                names.len(),
                es.iter().map(|&(a, b)| (idx(a), idx(b))),
                labels,
            )
            .expect("fixture graph is valid");
            (g, int(i as i64 + 1))
        })
        .collect();
    TemporalGraph::with_names(names.iter().map(|s| s.to_string()).collect(), snapshots)
        .expect("fixture temporal graph is valid")
}

/// Three nodes over four snapshots, pointed at `(v, t_4)`.
pub fn fixture_figure1() -> PointedTemporalGraph {
    let tg = build(
        &["u", "w", "v"],
        2,
        &[
            &[("u", "w")],
            &[("u", "w"), ("w", "v")],
            &[("w", "v")],
            &[("u", "v"), ("w", "v")],
        ],
        &[
            &[("v", 2)],
            &[],
            &[("u", 1)],
            &[("v", 1), ("u", 2)],
        ],
    );
    let v = tg.node_index("v").unwrap();
    PointedTemporalGraph::at_last(tg, v).unwrap()
}

/// Five nodes, two snapshots with identical edges; the two graphs differ
/// only in which leaf carries colour 2 at `t_1`.
pub fn fixture_figure2_pair() -> (PointedTemporalGraph, PointedTemporalGraph) {
    const EDGES: &[(&str, &str)] = &[("w1", "w2"), ("w1", "v"), ("u1", "v"), ("u1", "u2")];
    let names = ["v", "u1", "u2", "w1", "w2"];
    let first = build(
        &names,
        2,
        &[EDGES, EDGES],
        &[&[("u2", 2)], &[("u1", 1)]],
    );
    let second = build(
        &names,
        2,
        &[EDGES, EDGES],
        &[&[("w2", 2)], &[("u1", 1)]],
    );
    (
        PointedTemporalGraph::at_last(first, 0).unwrap(),
        PointedTemporalGraph::at_last(second, 0).unwrap(),
    )
}

/// A single isolated node over two snapshots: coloured at both times in the
/// first graph, only at `t_2` in the second.
pub fn fixture_figure4_pair() -> (PointedTemporalGraph, PointedTemporalGraph) {
    let first = build(&["v"], 1, &[&[], &[]], &[&[("v", 1)], &[("v", 1)]]);
    let second = build(&["v"], 1, &[&[], &[]], &[&[], &[("v", 1)]]);
    (
        PointedTemporalGraph::at_last(first, 0).unwrap(),
        PointedTemporalGraph::at_last(second, 0).unwrap(),
    )
}
