//! Sampled evidence (not proof) that a whole architecture class cannot tell
//! a fixture pair apart, together with the logic-side checks showing that
//! the pair is distinguishable in principle.

use super::{derive_seed, Arch, VerifyError};
use crate::logic::{check, parse_formula, SemanticsMode};
use crate::rational::Q;
use crate::tgnn::{classify, run_global, run_tandg, sample_model, ModelClass, SampleDims, TgnnModel};
use crate::tgraph::{fixture_figure2_pair, fixture_figure4_pair, PointedTemporalGraph};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const FIGURE2_WITNESS: &str = "<>(c1 & <>Y c2)";
pub const FIGURE4_WITNESS: &str = "Y c1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub description: String,
    pub first: String,
    pub second: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndistinguishabilityReport {
    pub class: ModelClass,
    pub pair: &'static str,
    pub trials: usize,
    pub seed: u64,
    pub mismatches: usize,
    /// Trial indices whose outputs differed (first few).
    pub mismatch_trials: Vec<usize>,
    pub witness: &'static str,
    pub witness_checks: Vec<WitnessCheck>,
}

impl IndistinguishabilityReport {
    pub fn pass(&self) -> bool {
        self.trials >= 1 && self.mismatches == 0 && self.witness_checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.name(),
            "pair": self.pair,
            "trials": self.trials,
            "seed": self.seed,
            "mismatches": self.mismatches,
            "mismatch_trials": self.mismatch_trials,
            "witness": self.witness,
            "witness_checks": self.witness_checks.iter().map(|c| json!({
                "check": c.description,
                "first": c.first,
                "second": c.second,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
            "verdict": if self.pass() { "pass" } else { "fail" },
            "note": "sampled evidence, not proof",
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "indist {:<9} {} : {} sampled models, {} output mismatches (seed {})  {}\n",
            self.class.name(),
            self.pair,
            self.trials,
            self.mismatches,
            self.seed,
            if self.pass() { "PASS" } else { "FAIL" }
        );
        for c in &self.witness_checks {
            s += &format!(
                "    {:<44} {:>5} vs {:<5} {}\n",
                c.description,
                c.first,
                c.second,
                if c.pass { "ok" } else { "FAILED" }
            );
        }
        s
    }
}

fn dims_for(trial: usize, colours: usize) -> SampleDims {
    SampleDims {
        colours,
        hidden: 1 + trial % 4,
        layers: 1 + (trial / 4) % 3,
        time_width: 1 + trial % 3,
    }
}

/// Raw final vector and scalar at the pointed node.
fn final_output(model: &TgnnModel, p: &PointedTemporalGraph) -> Result<(Vec<Q>, Q), VerifyError> {
    let err = |e: crate::tgnn::TgnnError| VerifyError::Run(e.to_string());
    let (t, v) = (p.time_index, p.node);
    Ok(match model {
        TgnnModel::TandG(m) => {
            let r = run_tandg(m, &p.graph).map_err(err)?;
            (r.state(t, v).to_vec(), r.scalars[t][v])
        }
        TgnnModel::Global(m) => {
            let r = run_global(m, &p.graph).map_err(err)?;
            (r.states.last().expect("non-empty")[t][v].clone(), r.scalars[t][v])
        }
        TgnnModel::Recursive(_) => unreachable!("recursive models are not battery subjects"),
    })
}

fn compiled_check(arch: Arch, witness: &str, pair: &(PointedTemporalGraph, PointedTemporalGraph)) -> Result<WitnessCheck, VerifyError> {
    let phi = parse_formula(witness).expect("witness parses");
    let art = arch.compile(&phi, pair.0.graph.label_width())?;
    let out = |p: &PointedTemporalGraph| -> Result<u8, VerifyError> {
        let run = art.model.run(&p.graph).map_err(|e| VerifyError::Run(e.to_string()))?;
        Ok(classify(run.scalars()[p.time_index][p.node]))
    };
    let (a, b) = (out(&pair.0)?, out(&pair.1)?);
    Ok(WitnessCheck {
        description: format!("{} model for {witness}", arch.name()),
        first: a.to_string(),
        second: b.to_string(),
        pass: (a, b) == (1, 0),
    })
}

pub fn indistinguishability_battery(class: ModelClass, trials: usize, seed: u64) -> Result<IndistinguishabilityReport, VerifyError> {
    let (pair, pair_name, witness, compiled) = match class {
        ModelClass::TandG => (fixture_figure2_pair(), "figure2", FIGURE2_WITNESS, [Arch::Recursive, Arch::Global]),
        ModelClass::Global => (fixture_figure4_pair(), "figure4", FIGURE4_WITNESS, [Arch::TandG, Arch::Recursive]),
        ModelClass::Recursive => {
            return Err(VerifyError::Run(
                "the battery applies to time-and-graph and global models".into(),
            ))
        }
    };
    let colours = pair.0.graph.label_width();
    let results: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let model = sample_model(class, &dims_for(i, colours), derive_seed(seed, i as u64));
            Ok(final_output(&model, &pair.0)? == final_output(&model, &pair.1)?)
        })
        .collect::<Result<_, VerifyError>>()?;
    let mismatch_trials: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect();

    let phi = parse_formula(witness).expect("witness parses");
    let truth = |p: &PointedTemporalGraph| -> Result<bool, VerifyError> {
        Ok(check(&p.graph, &phi, SemanticsMode::Product)
            .map_err(|e| VerifyError::Run(e.to_string()))?
            .root(p.node, p.time_index))
    };
    let (a, b) = (truth(&pair.0)?, truth(&pair.1)?);
    let mut witness_checks = vec![WitnessCheck {
        description: format!("oracle for {witness}"),
        first: a.to_string(),
        second: b.to_string(),
        pass: a && !b,
    }];
    for arch in compiled {
        witness_checks.push(compiled_check(arch, witness, &pair)?);
    }
    Ok(IndistinguishabilityReport {
        class,
        pair: pair_name,
        trials,
        seed,
        mismatches: mismatch_trials.len(),
        mismatch_trials: mismatch_trials.into_iter().take(20).collect(),
        witness,
        witness_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batteries() {
        for class in [ModelClass::TandG, ModelClass::Global] {
            let r = indistinguishability_battery(class, 50, 11).unwrap();
            assert_eq!(r.mismatches, 0);
            assert!(r.pass(), "{}", r.to_text());
        }
    }
}
