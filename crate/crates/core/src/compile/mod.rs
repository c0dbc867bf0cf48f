//! Formula-to-network compilers and the time-and-graph to recursive converter.

mod convert;
mod global;
mod recursive;
mod tandg;

pub use convert::tandg_to_recursive;
pub use global::compile_global;
pub use recursive::compile_recursive;
pub use tandg::compile_tandg;

use crate::logic::{Formula, Fragment, Node, SubformulaIndex};
use crate::nn::{Activation, Fnn, FnnLayer};
use crate::rational::{int, Q};
use crate::tgnn::{model_to_json, TgnnModel};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("formula is outside fragment {fragment:?}: offending subformula {subformula}")]
    FragmentViolation { fragment: Fragment, subformula: String },
    #[error("colour c{colour} exceeds the colour width {width}")]
    ColourIndexOutOfRange { colour: usize, width: usize },
    #[error("cell has {depth} layers; only single-layer cells can be converted")]
    UnsupportedCell { depth: usize },
}

/// Which network (or part of one) a layer index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// The single MPNN of a recursive or global model. Layer 0 is the
    /// output of the input-layout layer.
    Mpnn,
    M1,
    M2,
    Cell,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Mpnn => "mpnn",
            Component::M1 => "m1",
            Component::M2 => "m2",
            Component::Cell => "cell",
        }
    }
}

/// State dimensions (0-based) tracking one subformula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub current: usize,
    pub yesterday: Option<usize>,
    pub past: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompilationArtifact {
    pub model: TgnnModel,
    pub index: SubformulaIndex,
    pub dimension_map: Vec<Dims>,
    /// Layer at which each subformula's current dimension becomes valid.
    pub layer_map: Vec<(Component, usize)>,
    pub deviations: Vec<&'static str>,
}

impl CompilationArtifact {
    /// `n`
    pub fn subformula_count(&self) -> usize {
        self.index.len()
    }

    /// Number of construction layers of a recursive artifact (`n - m`).
    pub fn construction_layers(&self) -> usize {
        self.index.len() - self.index.atom_count()
    }

    pub fn sidecar_json(&self) -> Value {
        let names: Vec<String> = self.index.formulas().iter().map(|f| f.to_string()).collect();
        let mut dims = Map::new();
        let mut layers = Map::new();
        for (i, name) in names.iter().enumerate() {
            let d = &self.dimension_map[i];
            let mut entry = Map::new();
            entry.insert("current".into(), json!(d.current));
            if let Some(y) = d.yesterday {
                entry.insert("yesterday".into(), json!(y));
            }
            if let Some(p) = d.past {
                entry.insert("past".into(), json!(p));
            }
            dims.insert(name.clone(), Value::Object(entry));
            let (c, l) = self.layer_map[i];
            layers.insert(name.clone(), json!({"component": c.name(), "layer": l}));
        }
        json!({
            "arch": self.model.arch(),
            "subformulas": names,
            "n": self.index.len(),
            "m": self.index.atom_count(),
            "dimension_map": dims,
            "layer_map": layers,
            "deviations": self.deviations,
        })
    }

    pub fn model_json(&self) -> Value {
        model_to_json(&self.model)
    }
}

pub(crate) fn check_colours(phi: &Formula, k: usize) -> Result<(), CompileError> {
    let c = phi.max_colour();
    if c > k {
        return Err(CompileError::ColourIndexOutOfRange { colour: c, width: k });
    }
    Ok(())
}

/// Weight entries and bias of the row computing a boolean or atom node from
/// the values at `col(child)`.
pub(crate) fn boolean_row(node: Node, own: usize, col: impl Fn(usize) -> usize) -> (Vec<(usize, Q)>, Q) {
    match node {
        Node::Atom(_) => (vec![(col(own), int(1))], int(0)),
        Node::Not(a) => (vec![(col(a), int(-1))], int(1)),
        Node::And(a, b) => (vec![(col(a), int(1)), (col(b), int(1))], int(-1)),
        _ => (vec![], int(0)),
    }
}

/// Single trReLU layer from per-row entries.
pub(crate) fn layer(in_width: usize, rows: Vec<(Vec<(usize, Q)>, Q)>) -> Fnn {
    let out = rows.len();
    let mut entries = Vec::new();
    let mut bias = Vec::new();
    for (r, (es, b)) in rows.into_iter().enumerate() {
        entries.extend(es.into_iter().map(|(c, w)| (r, c, w)));
        bias.push((r, b));
    }
    Fnn::single(FnnLayer::from_entries(in_width, out, entries, bias, Activation::TrRelu))
}

/// `trReLU(x_root)` on a state of the given width.
pub(crate) fn root_readout(width: usize, root: usize) -> Fnn {
    layer(width, vec![(vec![(root, int(1))], int(0))])
}

pub(crate) fn copy(col: usize) -> (Vec<(usize, Q)>, Q) {
    (vec![(col, int(1))], int(0))
}

pub(crate) fn zero_row() -> (Vec<(usize, Q)>, Q) {
    (vec![], int(0))
}
