//! Dimension tracking of compiled recursive models: with `S` the working
//! state (layer 0 is the input-layout output),
//! (a) `S_i` after layer `layer_map(i)` and every later construction layer is the truth of `phi_i` now,
//! (b) `S_{n+i}` at layer 0 is the truth of `phi_i` at the previous snapshot,
//! (c) `S_{2n+i}` at layer 0 is "true at some strictly earlier snapshot".

use super::{CorpusParams, VerifyError};
use crate::compile::CompilationArtifact;
use crate::logic::{check_index, SemanticsMode};
use crate::rational::is_bit;
use crate::tgnn::{run_recursive, TgnnModel};
use crate::tgraph::TemporalGraph;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Statement {
    Current,
    Yesterday,
    Past,
}

impl Statement {
    pub fn label(self) -> &'static str {
        match self {
            Statement::Current => "a",
            Statement::Yesterday => "b",
            Statement::Past => "c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditFailure {
    pub statement: Statement,
    pub graph: usize,
    pub subformula: usize,
    pub node: usize,
    pub time: usize,
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub formula: String,
    pub graphs: usize,
    pub seed: Option<u64>,
    /// checks performed for statements (a), (b), (c)
    pub checks: [usize; 3],
    pub failures: Vec<AuditFailure>,
    pub hidden_values: usize,
    pub non_binary: usize,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.non_binary == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "formula": self.formula,
            "graphs": self.graphs,
            "seed": self.seed,
            "checks": {"a": self.checks[0], "b": self.checks[1], "c": self.checks[2]},
            "hidden_values": self.hidden_values,
            "non_binary": self.non_binary,
            "failures": self.failures.iter().map(|f| json!({
                "statement": f.statement.label(),
                "graph": f.graph,
                "subformula": f.subformula + 1,
                "node": f.node,
                "time": f.time + 1,
                "layer": f.layer,
            })).collect::<Vec<_>>(),
            "verdict": if self.pass() { "pass" } else { "fail" },
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "dims   {:<40} graphs {:>3}  checks a/b/c {}/{}/{}  failures {}  non-binary {}/{}  {}\n",
            self.formula,
            self.graphs,
            self.checks[0],
            self.checks[1],
            self.checks[2],
            self.failures.len(),
            self.non_binary,
            self.hidden_values,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

pub fn dimension_audit(artifact: &CompilationArtifact, corpus: &CorpusParams, seed: u64) -> Result<AuditReport, VerifyError> {
    let mut r = dimension_audit_on(artifact, &corpus.generate(seed))?;
    r.seed = Some(seed);
    Ok(r)
}

pub fn dimension_audit_on(artifact: &CompilationArtifact, graphs: &[TemporalGraph]) -> Result<AuditReport, VerifyError> {
    let TgnnModel::Recursive(model) = &artifact.model else {
        return Err(VerifyError::NotRecursive(artifact.model.arch()));
    };
    let parts: Vec<AuditReport> = graphs
        .par_iter()
        .enumerate()
        .map(|(gi, tg)| audit_graph(artifact, model, gi, tg))
        .collect::<Result<_, _>>()?;
    let mut total = AuditReport {
        formula: artifact.index.formula(artifact.index.root()).to_string(),
        graphs: graphs.len(),
        seed: None,
        checks: [0; 3],
        failures: Vec::new(),
        hidden_values: 0,
        non_binary: 0,
    };
    for p in parts {
        for s in 0..3 {
            total.checks[s] += p.checks[s];
        }
        total.failures.extend(p.failures);
        total.hidden_values += p.hidden_values;
        total.non_binary += p.non_binary;
    }
    Ok(total)
}

fn audit_graph(
    artifact: &CompilationArtifact,
    model: &crate::tgnn::RecursiveTgnn,
    gi: usize,
    tg: &TemporalGraph,
) -> Result<AuditReport, VerifyError> {
    let index = &artifact.index;
    let n = index.len();
    let construction = artifact.construction_layers();
    let table = check_index(tg, index, SemanticsMode::Product).map_err(|e| VerifyError::Run(e.to_string()))?;
    let run = run_recursive(model, tg).map_err(|e| VerifyError::Run(e.to_string()))?;
    let mut r = AuditReport {
        formula: String::new(),
        graphs: 1,
        seed: None,
        checks: [0; 3],
        failures: Vec::new(),
        hidden_values: 0,
        non_binary: 0,
    };
    let bit = |b: bool| crate::rational::int(b as i64);
    for t in 0..tg.len() {
        // states[0] is the raw input, states[1 + l] the working layer l
        let states = &run.steps[t].states;
        for l in states.iter().skip(1) {
            for h in l {
                r.hidden_values += h.len();
                r.non_binary += h.iter().filter(|x| !is_bit(x)).count();
            }
        }
        for v in 0..tg.node_count() {
            for i in 0..n {
                let d = artifact.dimension_map[i];
                let (_, from) = artifact.layer_map[i];
                for layer in from..=construction {
                    r.checks[0] += 1;
                    if states[1 + layer][v][d.current] != bit(table.get(i, v, t)) {
                        r.failures.push(AuditFailure {
                            statement: Statement::Current,
                            graph: gi,
                            subformula: i,
                            node: v,
                            time: t,
                            layer,
                        });
                    }
                }
                let yesterday = t > 0 && table.get(i, v, t - 1);
                let earlier = (0..t).any(|s| table.get(i, v, s));
                for (stmt, dim, want) in [
                    (Statement::Yesterday, d.yesterday, yesterday),
                    (Statement::Past, d.past, earlier),
                ] {
                    let dim = dim.expect("recursive artifacts track all three blocks");
                    r.checks[stmt as usize] += 1;
                    if states[1][v][dim] != bit(want) {
                        r.failures.push(AuditFailure {
                            statement: stmt,
                            graph: gi,
                            subformula: i,
                            node: v,
                            time: t,
                            layer: 0,
                        });
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::compile_recursive;
    use crate::logic::parse_formula;
    use crate::tgraph::fixture_figure1;

    #[test]
    fn figure1_audit() {
        let phi = parse_formula("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))").unwrap();
        let art = compile_recursive(&phi, 2).unwrap();
        let r = dimension_audit_on(&art, &[fixture_figure1().graph]).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert!(r.checks.iter().all(|&c| c > 0));
    }

    #[test]
    fn random_corpus_audit() {
        let phi = parse_formula("P(c1 & <>Y c2) & !Y P c3").unwrap();
        let art = compile_recursive(&phi, 3).unwrap();
        let r = dimension_audit(&art, &CorpusParams::default().with_graphs(10), 4).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
    }
}
