//! Brute-force model checker: dynamic programming over
//! (subformula, node, snapshot). This is the oracle every compiled network
//! is compared against.

use super::{enumerate_subformulas, Formula, Node, SubformulaIndex};
use crate::tgraph::TemporalGraph;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("temporal graph is not discrete (timestamps must be 1, 2, ..., n)")]
    NonDiscreteGraph,
    #[error("labels are not bit-valued")]
    NonBitLabels,
    #[error("formula uses colour c{colour} but graph has {width} colours")]
    ColourIndexOutOfRange { colour: usize, width: usize },
}

/// How `<>` interacts with `Y`/`P` directly below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum SemanticsMode {
    /// `<>` always looks at edges of the evaluation snapshot.
    #[default]
    Product,
    /// `<>Y x` looks at edges of the previous snapshot and `<>P x` at edges
    /// of every earlier snapshot, pairing each with the neighbour's state
    /// at that snapshot.
    TemporalNeighbourhood,
}

impl SemanticsMode {
    pub fn name(self) -> &'static str {
        match self {
            SemanticsMode::Product => "product",
            SemanticsMode::TemporalNeighbourhood => "temporal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    index: SubformulaIndex,
    nodes: usize,
    times: usize,
    data: Vec<bool>,
}

impl TruthTable {
    pub fn index(&self) -> &SubformulaIndex {
        &self.index
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn time_count(&self) -> usize {
        self.times
    }

    /// Truth of subformula `i` at node `u`, snapshot `t` (all 0-based).
    pub fn get(&self, i: usize, u: usize, t: usize) -> bool {
        self.data[(i * self.nodes + u) * self.times + t]
    }

    /// Truth of the whole formula.
    pub fn root(&self, u: usize, t: usize) -> bool {
        self.get(self.index.root(), u, t)
    }

    pub fn to_json(&self) -> Value {
        let subformulas: Vec<String> = self.index.formulas().iter().map(|f| f.to_string()).collect();
        let truth: Vec<Vec<Vec<bool>>> = (0..self.index.len())
            .map(|i| {
                (0..self.nodes)
                    .map(|u| (0..self.times).map(|t| self.get(i, u, t)).collect())
                    .collect()
            })
            .collect();
        json!({"subformulas": subformulas, "truth": truth})
    }
}

pub fn check(tg: &TemporalGraph, phi: &Formula, mode: SemanticsMode) -> Result<TruthTable, CheckError> {
    check_index(tg, &enumerate_subformulas(phi), mode)
}

pub fn check_index(
    tg: &TemporalGraph,
    index: &SubformulaIndex,
    mode: SemanticsMode,
) -> Result<TruthTable, CheckError> {
    if !tg.is_discrete() {
        return Err(CheckError::NonDiscreteGraph);
    }
    if !tg.is_coloured() {
        return Err(CheckError::NonBitLabels);
    }
    let width = tg.label_width();
    for node in index.nodes() {
        if let Node::Atom(c) = node {
            if *c > width {
                return Err(CheckError::ColourIndexOutOfRange { colour: *c, width });
            }
        }
    }
    let nodes = tg.node_count();
    let times = tg.len();
    let mut table = TruthTable {
        index: index.clone(),
        nodes,
        times,
        data: vec![false; index.len() * nodes * times],
    };
    let at = |i: usize, u: usize, t: usize| (i * nodes + u) * times + t;

    for (i, node) in index.nodes().iter().enumerate() {
        for t in 0..times {
            let g = tg.snapshot(t);
            for u in 0..nodes {
                let d = &table.data;
                let value = match *node {
                    Node::Atom(c) => tg.colour(t, u, c - 1),
                    Node::Not(a) => !d[at(a, u, t)],
                    Node::And(a, b) => d[at(a, u, t)] && d[at(b, u, t)],
                    Node::Yesterday(a) => t > 0 && d[at(a, u, t - 1)],
                    Node::Past(a) => (0..t).any(|h| d[at(a, u, h)]),
                    Node::Diamond(a) => match (mode, index.node(a)) {
                        (SemanticsMode::TemporalNeighbourhood, Node::Yesterday(x)) => {
                            t > 0
                                && tg.snapshot(t - 1).adjacency()[u]
                                    .iter()
                                    .any(|&w| d[at(x, w, t - 1)])
                        }
                        (SemanticsMode::TemporalNeighbourhood, Node::Past(x)) => (0..t).any(|h| {
                            tg.snapshot(h).adjacency()[u].iter().any(|&w| d[at(x, w, h)])
                        }),
                        _ => g.adjacency()[u].iter().any(|&w| d[at(a, w, t)]),
                    },
                };
                table.data[at(i, u, t)] = value;
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::rational::{frac, int};
    use crate::tgraph::{
        fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, StaticGraph,
    };

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn figure1_satisfied_at_v_t4() {
        let p = fixture_figure1();
        let table = check(
            &p.graph,
            &f("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))"),
            SemanticsMode::Product,
        )
        .unwrap();
        assert!(table.root(p.node, p.time_index));
        // nowhere else: only v at t_4 has c1 together with an earlier c2
        let hits: usize = (0..3)
            .flat_map(|u| (0..4).map(move |t| (u, t)))
            .filter(|&(u, t)| table.root(u, t))
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn figure2_pair_separated() {
        let (a, b) = fixture_figure2_pair();
        let phi = f("<>(c1 & <>Y c2)");
        assert!(check(&a.graph, &phi, SemanticsMode::Product).unwrap().root(a.node, a.time_index));
        assert!(!check(&b.graph, &phi, SemanticsMode::Product).unwrap().root(b.node, b.time_index));
    }

    #[test]
    fn figure4_pair_separated() {
        let (a, b) = fixture_figure4_pair();
        let phi = f("Y c1");
        assert!(check(&a.graph, &phi, SemanticsMode::Product).unwrap().root(0, 1));
        assert!(!check(&b.graph, &phi, SemanticsMode::Product).unwrap().root(0, 1));
    }

    #[test]
    fn temporal_operators_false_at_first_snapshot() {
        let p = fixture_figure1();
        for s in ["Y c1", "P c2", "Y !c1", "P !c1"] {
            let table = check(&p.graph, &f(s), SemanticsMode::Product).unwrap();
            for u in 0..3 {
                assert!(!table.root(u, 0), "{s}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = StaticGraph::new(1, [], vec![vec![int(1)]]).unwrap();
        let tg = TemporalGraph::new(vec![(g.clone(), int(2))]).unwrap();
        assert_eq!(
            check(&tg, &f("c1"), SemanticsMode::Product).unwrap_err(),
            CheckError::NonDiscreteGraph
        );
        let tg = TemporalGraph::new(vec![(g, int(1))]).unwrap();
        assert_eq!(
            check(&tg, &f("c2"), SemanticsMode::Product).unwrap_err(),
            CheckError::ColourIndexOutOfRange { colour: 2, width: 1 }
        );
        let half = StaticGraph::new(1, [], vec![vec![frac(1, 2)]]).unwrap();
        let tg = TemporalGraph::new(vec![(half, int(1))]).unwrap();
        assert_eq!(
            check(&tg, &f("c1"), SemanticsMode::Product).unwrap_err(),
            CheckError::NonBitLabels
        );
    }

    #[test]
    fn modes_diverge_on_edge_varying_witness() {
        // v-u adjacent only at t_1, where u carries c1
        let g1 = StaticGraph::new(2, [(0, 1)], vec![vec![int(0)], vec![int(1)]]).unwrap();
        let g2 = StaticGraph::new(2, [], vec![vec![int(0)], vec![int(0)]]).unwrap();
        let tg = TemporalGraph::new(vec![(g1, int(1)), (g2, int(2))]).unwrap();
        let phi = f("<>P c1");
        assert!(!check(&tg, &phi, SemanticsMode::Product).unwrap().root(0, 1));
        assert!(check(&tg, &phi, SemanticsMode::TemporalNeighbourhood).unwrap().root(0, 1));
        let phi = f("<>Y c1");
        assert!(!check(&tg, &phi, SemanticsMode::Product).unwrap().root(0, 1));
        assert!(check(&tg, &phi, SemanticsMode::TemporalNeighbourhood).unwrap().root(0, 1));
    }

    #[test]
    fn truth_table_json_shape() {
        let p = fixture_figure1();
        let v = check(&p.graph, &f("<>c1"), SemanticsMode::Product).unwrap().to_json();
        assert_eq!(v["subformulas"], json!(["c1", "<>c1"]));
        assert_eq!(v["truth"].as_array().unwrap().len(), 2);
        assert_eq!(v["truth"][0].as_array().unwrap().len(), 3);
        assert_eq!(v["truth"][0][0].as_array().unwrap().len(), 4);
    }
}
