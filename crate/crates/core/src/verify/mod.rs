//! Evidence harnesses: oracle-equivalence sweeps, dimension audits,
//! indistinguishability batteries and converter differentials.

mod audit;
mod battery;
mod converter;
mod equiv;

pub use audit::{dimension_audit, dimension_audit_on, AuditFailure, AuditReport, Statement};
pub use battery::{indistinguishability_battery, IndistinguishabilityReport, WitnessCheck};
pub use converter::{converter_differential, ConverterMismatch, ConverterReport};
pub use equiv::{equiv_sweep, equiv_sweep_model, Discrepancy, EquivalenceReport, Verdict};

use crate::compile::{compile_global, compile_recursive, compile_tandg, CompilationArtifact, CompileError};
use crate::logic::Formula;
use crate::tgraph::{random_temporal_graph, RandomGraphParams, TemporalGraph};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("dimension audits need a recursive artifact, got {0}")]
    NotRecursive(&'static str),
    #[error("corpus graphs have {corpus} colours but the model expects {model}")]
    ColourWidth { corpus: usize, model: usize },
    #[error("{0}")]
    Run(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arch {
    Recursive,
    TandG,
    Global,
}

impl Arch {
    pub fn name(self) -> &'static str {
        match self {
            Arch::Recursive => "recursive",
            Arch::TandG => "tandg",
            Arch::Global => "global",
        }
    }

    pub fn compile(self, phi: &Formula, colours: usize) -> Result<CompilationArtifact, CompileError> {
        match self {
            Arch::Recursive => compile_recursive(phi, colours),
            Arch::TandG => compile_tandg(phi, colours),
            Arch::Global => compile_global(phi, colours),
        }
    }
}

/// A seeded family of random discrete temporal graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusParams {
    pub graphs: usize,
    pub graph: RandomGraphParams,
    /// Upper bound on the number of discrepancies kept in a report.
    pub max_discrepancies: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            graphs: 50,
            graph: RandomGraphParams {
                max_nodes: 6,
                max_snapshots: 5,
                colours: 3,
                edge_density: 0.4,
                static_edges: false,
            },
            max_discrepancies: 1000,
        }
    }
}

impl CorpusParams {
    pub fn with_graphs(mut self, graphs: usize) -> Self {
        self.graphs = graphs;
        self
    }

    pub fn edge_static(mut self, static_edges: bool) -> Self {
        self.graph.static_edges = static_edges;
        self
    }

    pub fn generate(&self, seed: u64) -> Vec<TemporalGraph> {
        (0..self.graphs)
            .map(|i| random_temporal_graph(&self.graph, derive_seed(seed, i as u64)))
            .collect()
    }

    pub fn to_json(&self, seed: u64) -> Value {
        json!({
            "graphs": self.graphs,
            "max_nodes": self.graph.max_nodes,
            "max_snapshots": self.graph.max_snapshots,
            "colours": self.graph.colours,
            "edge_density": self.graph.edge_density,
            "static_edges": self.graph.static_edges,
            "seed": seed,
        })
    }

    pub fn describe(&self, seed: u64) -> String {
        format!(
            "{} graphs, <= {} nodes, <= {} snapshots, {} colours, density {}, {}, seed {}",
            self.graphs,
            self.graph.max_nodes,
            self.graph.max_snapshots,
            self.graph.colours,
            self.graph.edge_density,
            if self.graph.static_edges { "edge-static" } else { "edge-varying" },
            seed
        )
    }
}

/// Independent stream `i` of a base seed (splitmix64 step).
pub fn derive_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
