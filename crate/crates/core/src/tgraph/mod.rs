//! Temporal graphs: a sequence of timestamped snapshots over one node set.

mod fixtures;
mod json;
mod random;

pub use fixtures::{fixture_figure1, fixture_figure2_pair, fixture_figure4_pair};
pub use json::{parse_json, serialize_json};
pub use random::{random_temporal_graph, RandomGraphParams};

use crate::rational::{display, is_bit, Q};
use num_traits::{One, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("temporal graph needs at least one snapshot")]
    EmptySequence,
    #[error("snapshot {index} has {found} nodes, expected {expected}")]
    MismatchedNodeSets { index: usize, expected: usize, found: usize },
    #[error("snapshot {index} has label width {found}, expected {expected}")]
    MismatchedLabelWidth { index: usize, expected: usize, found: usize },
    #[error("timestamp of snapshot {index} does not exceed its predecessor")]
    NonIncreasingTimestamps { index: usize },
    #[error("node {node} out of range (graph has {count} nodes)")]
    NodeOutOfRange { node: usize, count: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("node {node} has label width {found}, expected {expected}")]
    LabelWidth { node: usize, expected: usize, found: usize },
    #[error("snapshot index {index} out of range (length {len})")]
    TimeOutOfRange { index: usize, len: usize },
    #[error("node name table has {found} entries for {expected} nodes")]
    NameCount { expected: usize, found: usize },
    #[error("invalid JSON: {0}")]
    JsonSyntax(String),
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}

/// An undirected, node-labelled graph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<Vec<Q>>,
    adjacency: Vec<Vec<usize>>,
}

impl StaticGraph {
    /// Edges are normalised to `(min, max)`; duplicates are rejected.
    pub fn new(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<Vec<Q>>,
    ) -> Result<Self, GraphError> {
        if labels.len() != node_count {
            return Err(GraphError::NodeOutOfRange {
                node: labels.len(),
                count: node_count,
            });
        }
        let width = labels.first().map_or(0, Vec::len);
        for (node, l) in labels.iter().enumerate() {
            if l.len() != width {
                return Err(GraphError::LabelWidth {
                    node,
                    expected: width,
                    found: l.len(),
                });
            }
        }
        let mut normalised = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        node: x,
                        count: node_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            normalised.push((a.min(b), a.max(b)));
        }
        normalised.sort_unstable();
        if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for &(a, b) in &normalised {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(StaticGraph {
            node_count,
            edges: normalised,
            labels,
            adjacency,
        })
    }

    /// A graph whose every label is `width` zeros.
    pub fn unlabelled(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        width: usize,
    ) -> Result<Self, GraphError> {
        Self::new(node_count, edges, vec![vec![Q::zero(); width]; node_count])
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[Vec<Q>] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &[Q] {
        &self.labels[v]
    }

    pub fn label_width(&self) -> usize {
        self.labels.first().map_or(0, Vec::len)
    }

    /// Neighbours of `v` in ascending index order.
    pub fn neighbours(&self, v: usize) -> Result<&[usize], GraphError> {
        self.adjacency
            .get(v)
            .map(Vec::as_slice)
            .ok_or(GraphError::NodeOutOfRange {
                node: v,
                count: self.node_count,
            })
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Same topology, new labels (width may change).
    pub fn relabel(&self, labels: Vec<Vec<Q>>) -> Result<Self, GraphError> {
        Self::new(self.node_count, self.edges.iter().copied(), labels)
    }

    pub fn is_coloured(&self) -> bool {
        self.labels.iter().flatten().all(is_bit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub graph: StaticGraph,
    pub time: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    names: Vec<String>,
    width: usize,
    snapshots: Vec<Snapshot>,
}

impl TemporalGraph {
    /// Validates and builds a temporal graph with default node names `n0, n1, ...`.
    pub fn new(snapshots: Vec<(StaticGraph, Q)>) -> Result<Self, GraphError> {
        let count = snapshots.first().map_or(0, |(g, _)| g.node_count());
        Self::with_names((0..count).map(|i| format!("n{i}")).collect(), snapshots)
    }

    pub fn with_names(
        names: Vec<String>,
        snapshots: Vec<(StaticGraph, Q)>,
    ) -> Result<Self, GraphError> {
        let (first, _) = snapshots.first().ok_or(GraphError::EmptySequence)?;
        let count = first.node_count();
        let width = first.label_width();
        for (index, (g, _)) in snapshots.iter().enumerate() {
            if g.node_count() != count {
                return Err(GraphError::MismatchedNodeSets {
                    index,
                    expected: count,
                    found: g.node_count(),
                });
            }
            if g.label_width() != width {
                return Err(GraphError::MismatchedLabelWidth {
                    index,
                    expected: width,
                    found: g.label_width(),
                });
            }
        }
        for index in 1..snapshots.len() {
            if snapshots[index].1 <= snapshots[index - 1].1 {
                return Err(GraphError::NonIncreasingTimestamps { index });
            }
        }
        if names.len() != count {
            return Err(GraphError::NameCount {
                expected: count,
                found: names.len(),
            });
        }
        Ok(TemporalGraph {
            names,
            width,
            snapshots: snapshots
                .into_iter()
                .map(|(graph, time)| Snapshot { graph, time })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.snapshots[0].graph.node_count()
    }

    pub fn label_width(&self) -> usize {
        self.width
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    /// Snapshot at 0-based position `i`.
    pub fn snapshot(&self, i: usize) -> &StaticGraph {
        &self.snapshots[i].graph
    }

    pub fn time(&self, i: usize) -> Q {
        self.snapshots[i].time
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True iff the i-th timestamp (1-based) equals i.
    pub fn is_discrete(&self) -> bool {
        self.snapshots
            .iter()
            .enumerate()
            .all(|(i, s)| s.time == Q::from_integer(i as i64 + 1))
    }

    pub fn is_coloured(&self) -> bool {
        self.snapshots.iter().all(|s| s.graph.is_coloured())
    }

    /// True iff every snapshot has the same edge set.
    pub fn is_edge_static(&self) -> bool {
        self.snapshots
            .windows(2)
            .all(|w| w[0].graph.edges() == w[1].graph.edges())
    }

    /// Copy with timestamps replaced by 1..n.
    pub fn reindexed(&self) -> TemporalGraph {
        let mut out = self.clone();
        for (i, s) in out.snapshots.iter_mut().enumerate() {
            s.time = Q::from_integer(i as i64 + 1);
        }
        out
    }

    /// Content hash (hex SHA-256 of the canonical JSON form).
    pub fn digest(&self) -> String {
        let text = serialize_json(self);
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// Short human-readable description used in reports.
    pub fn describe(&self) -> String {
        format!(
            "{} nodes, {} snapshots, {} colours, t = [{}]",
            self.node_count(),
            self.len(),
            self.width,
            self.snapshots
                .iter()
                .map(|s| display(&s.time))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }

    /// Bit of colour `c` (0-based) on node `v` at snapshot `i` (0-based).
    pub fn colour(&self, i: usize, v: usize, c: usize) -> bool {
        self.snapshots[i].graph.label(v)[c].is_one()
    }
}

/// A temporal graph with a distinguished node and snapshot (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedTemporalGraph {
    pub graph: TemporalGraph,
    pub node: usize,
    pub time_index: usize,
}

impl PointedTemporalGraph {
    pub fn new(graph: TemporalGraph, node: usize, time_index: usize) -> Result<Self, GraphError> {
        if node >= graph.node_count() {
            return Err(GraphError::NodeOutOfRange {
                node,
                count: graph.node_count(),
            });
        }
        if time_index >= graph.len() {
            return Err(GraphError::TimeOutOfRange {
                index: time_index,
                len: graph.len(),
            });
        }
        Ok(PointedTemporalGraph {
            graph,
            node,
            time_index,
        })
    }

    /// Pointed at the last snapshot.
    pub fn at_last(graph: TemporalGraph, node: usize) -> Result<Self, GraphError> {
        let last = graph.len() - 1;
        Self::new(graph, node, last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn single(label: i64, t: Q) -> (StaticGraph, Q) {
        (StaticGraph::new(1, [], vec![vec![int(label)]]).unwrap(), t)
    }

    #[test]
    fn minimal_temporal_graph() {
        let tg = TemporalGraph::new(vec![single(1, int(1))]).unwrap();
        assert_eq!(tg.len(), 1);
        assert!(tg.is_discrete());
    }

    #[test]
    fn rejects_decreasing_timestamps() {
        let err = TemporalGraph::new(vec![single(1, int(2)), single(0, int(1))]).unwrap_err();
        assert_eq!(err, GraphError::NonIncreasingTimestamps { index: 1 });
    }

    #[test]
    fn rejects_empty_and_mismatched() {
        assert_eq!(TemporalGraph::new(vec![]).unwrap_err(), GraphError::EmptySequence);
        let two = StaticGraph::unlabelled(2, [], 1).unwrap();
        let err = TemporalGraph::new(vec![single(0, int(1)), (two, int(2))]).unwrap_err();
        assert!(matches!(err, GraphError::MismatchedNodeSets { index: 1, .. }));
        let wide = StaticGraph::unlabelled(1, [], 2).unwrap();
        let err = TemporalGraph::new(vec![single(0, int(1)), (wide, int(2))]).unwrap_err();
        assert!(matches!(err, GraphError::MismatchedLabelWidth { index: 1, .. }));
    }

    #[test]
    fn discreteness() {
        let tg = TemporalGraph::new(vec![single(0, int(1)), single(0, frac(5, 2))]).unwrap();
        assert!(!tg.is_discrete());
        assert!(tg.reindexed().is_discrete());
    }

    #[test]
    fn edge_validation() {
        assert_eq!(
            StaticGraph::unlabelled(2, [(1, 1)], 1).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert_eq!(
            StaticGraph::unlabelled(3, [(0, 1), (1, 0)], 1).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            StaticGraph::unlabelled(2, [(0, 2)], 1).unwrap_err(),
            GraphError::NodeOutOfRange { node: 2, .. }
        ));
    }

    #[test]
    fn neighbours_of_isolated_node() {
        let g = StaticGraph::unlabelled(3, [(0, 1)], 1).unwrap();
        assert!(g.neighbours(2).unwrap().is_empty());
        assert_eq!(g.neighbours(1).unwrap(), &[0]);
        assert!(g.neighbours(3).is_err());
    }

    #[test]
    fn neighbours_in_figure_fixtures() {
        let fig1 = fixture_figure1();
        let tg = &fig1.graph;
        let (u, w, v) = (
            tg.node_index("u").unwrap(),
            tg.node_index("w").unwrap(),
            tg.node_index("v").unwrap(),
        );
        let mut n = tg.snapshot(3).neighbours(v).unwrap().to_vec();
        n.sort();
        let mut expected = vec![u, w];
        expected.sort();
        assert_eq!(n, expected);

        let (fig2, _) = fixture_figure2_pair();
        let tg = &fig2.graph;
        let v = tg.node_index("v").unwrap();
        let mut n: Vec<&str> = tg
            .snapshot(0)
            .neighbours(v)
            .unwrap()
            .iter()
            .map(|&i| tg.names()[i].as_str())
            .collect();
        n.sort();
        assert_eq!(n, vec!["u1", "w1"]);
    }
}
