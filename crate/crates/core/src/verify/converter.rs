use super::{derive_seed, CorpusParams, VerifyError};
use crate::compile::tandg_to_recursive;
use crate::tgnn::{classify, run_recursive, run_tandg, sample_tandg, SampleDims};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverterMismatch {
    pub trial: usize,
    pub graph: usize,
    pub node: usize,
    pub time: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConverterReport {
    pub trials: usize,
    pub corpus: CorpusParams,
    pub seed: u64,
    pub comparisons: usize,
    /// pointed nodes whose raw outputs differ
    pub raw_mismatches: usize,
    /// pointed nodes whose classifications differ
    pub mismatches: Vec<ConverterMismatch>,
}

impl ConverterReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.raw_mismatches == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "corpus": self.corpus.to_json(self.seed),
            "seed": self.seed,
            "comparisons": self.comparisons,
            "raw_mismatches": self.raw_mismatches,
            "mismatches": self.mismatches.iter().map(|m| json!({
                "trial": m.trial, "graph": m.graph, "node": m.node, "time": m.time + 1,
            })).collect::<Vec<_>>(),
            "verdict": if self.pass() { "pass" } else { "fail" },
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "convert {} sampled models x {} graphs: {} pointed comparisons, {} classification / {} raw mismatches (seed {})  {}\n",
            self.trials,
            self.corpus.graphs,
            self.comparisons,
            self.mismatches.len(),
            self.raw_mismatches,
            self.seed,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

/// Samples single-layer-cell time-and-graph models, converts each to a
/// recursive model and compares both on a shared corpus.
pub fn converter_differential(trials: usize, corpus: &CorpusParams, seed: u64) -> Result<ConverterReport, VerifyError> {
    let graphs = corpus.generate(seed);
    let colours = corpus.graph.colours;
    let per_trial: Vec<(usize, usize, Vec<ConverterMismatch>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let dims = SampleDims {
                colours,
                hidden: 1 + trial % 4,
                layers: 1 + (trial / 4) % 3,
                time_width: 1,
            };
            let t = sample_tandg(&dims, derive_seed(seed ^ 0xC0DE, trial as u64));
            let r = tandg_to_recursive(&t)?;
            let (mut count, mut raw, mut bad) = (0, 0, Vec::new());
            for (gi, tg) in graphs.iter().enumerate() {
                let err = |e: crate::tgnn::TgnnError| VerifyError::Run(e.to_string());
                let a = run_tandg(&t, tg).map_err(err)?;
                let b = run_recursive(&r, tg).map_err(err)?;
                for time in 0..tg.len() {
                    for node in 0..tg.node_count() {
                        count += 1;
                        let (x, y) = (a.scalars[time][node], b.scalars[time][node]);
                        raw += (x != y) as usize;
                        if classify(x) != classify(y) {
                            bad.push(ConverterMismatch { trial, graph: gi, node, time });
                        }
                    }
                }
            }
            Ok((count, raw, bad))
        })
        .collect::<Result<_, VerifyError>>()?;
    Ok(ConverterReport {
        trials,
        corpus: *corpus,
        seed,
        comparisons: per_trial.iter().map(|p| p.0).sum(),
        raw_mismatches: per_trial.iter().map(|p| p.1).sum(),
        mismatches: per_trial.into_iter().flat_map(|p| p.2).collect(),
    })
}
