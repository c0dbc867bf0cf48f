//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error, 3 fragment violation.

use crate::compile::{CompilationArtifact, CompileError, Component};
use crate::logic::{check, in_fragment_l1, in_fragment_l2, parse_formula, random_formula, Formula, Fragment, RandomFormulaParams, SemanticsMode};
use crate::tgnn::{classify, parse_model, ModelClass, TgnnModel};
use crate::tgraph::{fixture_figure1, fixture_figure2_pair, fixture_figure4_pair, parse_json, PointedTemporalGraph, TemporalGraph};
use crate::verify::{
    converter_differential, derive_seed, dimension_audit, dimension_audit_on, equiv_sweep, equiv_sweep_model,
    indistinguishability_battery, Arch, CorpusParams, VerifyError,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "tgnn-logic", version, about = "Compile temporal/modal formulas into temporal GNNs and verify them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Product,
    Temporal,
}

impl From<ModeArg> for SemanticsMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Product => SemanticsMode::Product,
            ModeArg::Temporal => SemanticsMode::TemporalNeighbourhood,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArchArg {
    Rec,
    Tandg,
    Glob,
}

impl From<ArchArg> for Arch {
    fn from(a: ArchArg) -> Self {
        match a {
            ArchArg::Rec => Arch::Recursive,
            ArchArg::Tandg => Arch::TandG,
            ArchArg::Glob => Arch::Global,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Equiv,
    Dims,
    Indist,
    Converter,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Demo {
    Figure1,
    Figure2,
    Figure4,
    Corollary1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Model-check a formula on a temporal graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "product")]
        mode: ModeArg,
        /// NODE or NODE,TIME (1-based time; default: last snapshot)
        #[arg(long)]
        at: Option<String>,
        /// Dump the full truth table as JSON.
        #[arg(long)]
        all: bool,
    },
    /// Compile a formula into a model (and a sidecar describing its layout).
    Compile {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum)]
        arch: ArchArg,
        #[arg(long, default_value_t = 0)]
        colours: usize,
        /// Model JSON path; the sidecar goes next to it as *.sidecar.json.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run a model on a temporal graph.
    Run {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        at: Option<String>,
    },
    /// Report fragment memberships.
    Classify {
        #[arg(long)]
        formula: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// graphs per sweep corpus
        #[arg(long, default_value_t = 20)]
        graphs: usize,
        /// Check this model (with --formula) instead of the built-in sweeps.
        #[arg(long, requires = "formula")]
        model: Option<PathBuf>,
        #[arg(long)]
        formula: Option<String>,
        #[arg(long, value_enum, default_value = "product")]
        mode: ModeArg,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Reproduce a worked example end to end.
    Demo {
        #[arg(value_enum)]
        which: Demo,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Fragment(String),
    Verification,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Verification => 1,
            Failure::Input(_) => 2,
            Failure::Fragment(_) => 3,
        }
    }
}

impl From<CompileError> for Failure {
    fn from(e: CompileError) -> Self {
        match e {
            CompileError::FragmentViolation { .. } => Failure::Fragment(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Compile(c) => c.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

/// Runs the CLI with `args` (including the program name), writing reports to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Input(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Fragment(m) => {
                    let _ = writeln!(err, "fragment violation: {m}");
                }
                Failure::Verification => {
                    let _ = writeln!(err, "verification failed");
                }
            }
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<TemporalGraph, Failure> {
    parse_json(&read(path)?).map_err(input(&path.display().to_string()))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(input("formula"))
}

/// Resolves `NODE[,TIME]` (node name or index, 1-based time).
fn pointed(tg: &TemporalGraph, at: &str) -> Result<(usize, usize), Failure> {
    let (node, time) = match at.split_once(',') {
        Some((n, t)) => (n.trim(), Some(t.trim())),
        None => (at.trim(), None),
    };
    let v = tg
        .node_index(node)
        .or_else(|| node.parse::<usize>().ok().filter(|&i| i < tg.node_count()))
        .ok_or_else(|| Failure::Input(format!("unknown node {node:?}")))?;
    let t = match time {
        None => tg.len() - 1,
        Some(t) => {
            let i: usize = t
                .trim_start_matches('t')
                .parse()
                .map_err(|_| Failure::Input(format!("bad time {t:?}")))?;
            if i == 0 || i > tg.len() {
                return Err(Failure::Input(format!("time {i} outside 1..={}", tg.len())));
            }
            i - 1
        }
    };
    Ok((v, t))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Check {
            graph,
            formula: f,
            mode,
            at,
            all,
        } => {
            let tg = load_graph(&graph)?;
            let phi = formula(&f)?;
            let table = check(&tg, &phi, mode.into()).map_err(input("check"))?;
            if all {
                emit(out, &serde_json::to_string_pretty(&table.to_json()).expect("json"));
            } else {
                let (v, t) = match at {
                    Some(a) => pointed(&tg, &a)?,
                    None => (0, tg.len() - 1),
                };
                emit(out, &table.root(v, t).to_string());
            }
            Ok(())
        }
        Command::Compile {
            formula: f,
            arch,
            colours,
            output,
        } => {
            let phi = formula(&f)?;
            let k = if colours == 0 { phi.max_colour().max(1) } else { colours };
            let arch: Arch = arch.into();
            let art = arch.compile(&phi, k)?;
            emit(out, &summary(&art, k));
            if let Some(path) = output {
                write_file(&path, &serde_json::to_string_pretty(&art.model_json()).expect("json"))?;
                let sidecar = path.with_extension("sidecar.json");
                write_file(&sidecar, &serde_json::to_string_pretty(&art.sidecar_json()).expect("json"))?;
                emit(out, &format!("wrote {} and {}", path.display(), sidecar.display()));
            }
            Ok(())
        }
        Command::Run { model, graph, trace, at } => {
            let m = parse_model(&read(&model)?).map_err(input(&model.display().to_string()))?;
            let tg = load_graph(&graph)?;
            let run = m.run(&tg).map_err(input("run"))?;
            if trace {
                emit(out, &serde_json::to_string_pretty(&run.to_json()).expect("json"));
                return Ok(());
            }
            match at {
                Some(a) => {
                    let (v, t) = pointed(&tg, &a)?;
                    emit(out, &classify(run.scalars()[t][v]).to_string());
                }
                None => {
                    let t = tg.len() - 1;
                    for v in 0..tg.node_count() {
                        emit(out, &format!("{}\t{}", tg.names()[v], classify(run.scalars()[t][v])));
                    }
                }
            }
            Ok(())
        }
        Command::Classify { formula: f } => {
            let phi = formula(&f)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            emit(out, &format!("L1: {}, L2: {}", yes(in_fragment_l1(&phi)), yes(in_fragment_l2(&phi))));
            Ok(())
        }
        Command::Verify {
            suite,
            trials,
            seed,
            graphs,
            model,
            formula: f,
            mode,
            output,
        } => verify(out, suite, trials, seed, graphs, model, f, mode.into(), output),
        Command::Demo { which, trials, seed } => demo(out, which, trials, seed),
    }
}

fn emit(out: &mut dyn Write, s: &str) {
    let _ = writeln!(out, "{s}");
}

fn summary(art: &CompilationArtifact, k: usize) -> String {
    let n = art.subformula_count();
    let m = art.index.atom_count();
    let mut s = format!("arch: {}\nformula: {}\n", art.model.arch(), art.index.formula(art.index.root()));
    s += &format!("n={n}, m={m}, construction layers {}\n", art.construction_layers());
    match &art.model {
        TgnnModel::Recursive(t) => {
            s += &format!(
                "layers: {} (input layout 1, construction {}, shift 1)\nwidths: input k+2n={}, working 3n={}, carried 2n={}\n",
                t.mpnn().depth(),
                art.construction_layers(),
                k + 2 * n,
                3 * n,
                t.mpnn().output_width()
            );
        }
        TgnnModel::TandG(t) => {
            let cats = |c: Component| art.layer_map.iter().filter(|(x, _)| *x == c).count();
            s += &format!(
                "M1/M2 layers: {}, cell layers: {}\nsubformulas in M1/M2/cell: {}/{}/{}\nwidths: M1 out n={}, M2 out 2n={}, carried 2n={}\n",
                t.m1().depth(),
                t.cell().depth(),
                cats(Component::M1),
                cats(Component::M2),
                cats(Component::Cell),
                t.m1().output_width(),
                t.m2().output_width(),
                t.cell().output_width()
            );
        }
        TgnnModel::Global(t) => {
            s += &format!(
                "layers: {} (input layout 1, construction {})\nwidths: state n={}, time features {}\n",
                t.mpnn().depth(),
                art.construction_layers(),
                t.mpnn().output_width(),
                t.encoder().width()
            );
        }
    }
    s += &format!("deviations: {}", art.deviations.join(", "));
    s
}

fn random_formulas(fragment: Fragment, count: usize, seed: u64) -> Vec<Formula> {
    let p = RandomFormulaParams {
        max_depth: 5,
        colours: 3,
        fragment,
    };
    (0..count)
        .map(|i| random_formula(&p, derive_seed(seed, i as u64)).expect("fragment sampler succeeds"))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn verify(
    out: &mut dyn Write,
    suite: Suite,
    trials: Option<usize>,
    seed: u64,
    graphs: usize,
    model: Option<PathBuf>,
    f: Option<String>,
    mode: SemanticsMode,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let corpus = CorpusParams::default().with_graphs(graphs);
    let mut ok = true;
    let mut sections: Vec<Value> = Vec::new();
    emit(out, &format!("seed {seed}"));

    if let Some(path) = model {
        let m = parse_model(&read(&path)?).map_err(input(&path.display().to_string()))?;
        let phi = formula(f.as_deref().expect("clap requires --formula"))?;
        let corpus = CorpusParams {
            graph: crate::tgraph::RandomGraphParams {
                colours: m.colour_width(),
                ..corpus.graph
            },
            ..corpus
        };
        let r = equiv_sweep_model(&m, &phi, mode, &corpus, seed)?;
        ok &= !r.verdict.is_failure();
        let _ = write!(out, "{}", r.to_text());
        sections.push(json!({"suite": "equiv", "reports": [r.to_json()]}));
        return finish(out, ok, seed, sections, output);
    }

    if matches!(suite, Suite::All | Suite::Equiv) {
        let mut reports = Vec::new();
        let mut jobs: Vec<(Formula, Arch, SemanticsMode, CorpusParams)> = Vec::new();
        let named = ["<>Y c1", "c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))"];
        for phi in named.iter().map(|s| parse_formula(s).expect("named formula")).chain(random_formulas(Fragment::Any, 30, seed)) {
            jobs.push((phi, Arch::Recursive, SemanticsMode::Product, corpus));
        }
        for phi in ["<>P c1", "Y c1"].iter().map(|s| parse_formula(s).expect("named formula")).chain(random_formulas(Fragment::L1, 20, seed ^ 1)) {
            jobs.push((phi, Arch::TandG, SemanticsMode::Product, corpus));
        }
        for phi in ["<>P c1", "<>(c1 & <>Y c2)"].iter().map(|s| parse_formula(s).expect("named formula")).chain(random_formulas(Fragment::L2, 20, seed ^ 2)) {
            jobs.push((phi.clone(), Arch::Global, SemanticsMode::Product, corpus.edge_static(true)));
            jobs.push((phi.clone(), Arch::Global, SemanticsMode::TemporalNeighbourhood, corpus));
        }
        // the documented gap: product reading on edge-varying graphs
        jobs.push((parse_formula("<>P c1").expect("named"), Arch::Global, SemanticsMode::Product, corpus));
        for (phi, arch, mode, c) in jobs {
            let r = equiv_sweep(&phi, arch, mode, &c, seed)?;
            ok &= !r.verdict.is_failure();
            let _ = write!(out, "{}", r.to_text());
            reports.push(r.to_json());
        }
        sections.push(json!({"suite": "equiv", "reports": reports}));
    }

    if matches!(suite, Suite::All | Suite::Dims) {
        let mut reports = Vec::new();
        let fig1 = parse_formula("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))").expect("named");
        let art = Arch::Recursive.compile(&fig1, 2)?;
        let r = dimension_audit_on(&art, &[fixture_figure1().graph])?;
        ok &= r.pass();
        let _ = write!(out, "{}", r.to_text());
        reports.push(r.to_json());
        for phi in random_formulas(Fragment::Any, 20, seed ^ 3) {
            let art = Arch::Recursive.compile(&phi, corpus.graph.colours)?;
            let r = dimension_audit(&art, &corpus, seed)?;
            ok &= r.pass();
            let _ = write!(out, "{}", r.to_text());
            reports.push(r.to_json());
        }
        sections.push(json!({"suite": "dims", "reports": reports}));
    }

    if matches!(suite, Suite::All | Suite::Indist) {
        let mut reports = Vec::new();
        for class in [ModelClass::TandG, ModelClass::Global] {
            let r = indistinguishability_battery(class, trials.unwrap_or(1000), seed)?;
            ok &= r.pass();
            let _ = write!(out, "{}", r.to_text());
            reports.push(r.to_json());
        }
        sections.push(json!({"suite": "indist", "reports": reports}));
    }

    if matches!(suite, Suite::All | Suite::Converter) {
        let r = converter_differential(trials.unwrap_or(200), &corpus, seed)?;
        ok &= r.pass();
        let _ = write!(out, "{}", r.to_text());
        sections.push(json!({"suite": "converter", "reports": [r.to_json()]}));
    }
    finish(out, ok, seed, sections, output)
}

fn finish(out: &mut dyn Write, ok: bool, seed: u64, sections: Vec<Value>, output: Option<PathBuf>) -> Result<(), Failure> {
    if let Some(path) = output {
        let doc = json!({"seed": seed, "pass": ok, "sections": sections});
        write_file(&path, &serde_json::to_string_pretty(&doc).expect("json"))?;
    }
    emit(out, if ok { "overall: PASS" } else { "overall: FAIL" });
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verdict_at(art: &CompilationArtifact, p: &PointedTemporalGraph) -> Result<u8, Failure> {
    let run = art.model.run(&p.graph).map_err(input("run"))?;
    Ok(classify(run.scalars()[p.time_index][p.node]))
}

fn truth_at(phi: &Formula, p: &PointedTemporalGraph) -> Result<bool, Failure> {
    Ok(check(&p.graph, phi, SemanticsMode::Product).map_err(input("check"))?.root(p.node, p.time_index))
}

fn demo(out: &mut dyn Write, which: Demo, trials: usize, seed: u64) -> Result<(), Failure> {
    emit(out, &format!("seed {seed}"));
    match which {
        Demo::Figure1 => {
            let p = fixture_figure1();
            let phi = parse_formula("c1 & P c2 & <>((!c1 & c2) & Y(c1 & !c2))").expect("named");
            emit(out, &p.graph.describe());
            emit(out, &format!("formula: {phi}"));
            let table = check(&p.graph, &phi, SemanticsMode::Product).map_err(input("check"))?;
            let v = p.node;
            emit(out, &format!("satisfaction at node {}:", p.graph.names()[v]));
            let header: String = (1..=p.graph.len()).map(|t| format!("  t{t}")).collect();
            emit(out, &format!("  {:<44}{header}", "subformula"));
            for (i, f) in table.index().formulas().iter().enumerate() {
                let row: String = (0..p.graph.len())
                    .map(|t| format!("  {:>2}", if table.get(i, v, t) { "1" } else { "." }))
                    .collect();
                emit(out, &format!("  {:<44}{row}", f.to_string()));
            }
            let art = Arch::Recursive.compile(&phi, 2)?;
            emit(out, &format!("oracle at (v, t4): {}", truth_at(&phi, &p)?));
            emit(out, &format!("recursive model at (v, t4): {}", verdict_at(&art, &p)?));
        }
        Demo::Figure2 => {
            let pair = fixture_figure2_pair();
            let phi = parse_formula("<>(c1 & <>Y c2)").expect("named");
            emit(out, &format!("witness: {phi}"));
            emit(out, &format!("oracle:           TG {}  TG' {}", truth_at(&phi, &pair.0)?, truth_at(&phi, &pair.1)?));
            for arch in [Arch::Recursive, Arch::Global] {
                let art = arch.compile(&phi, 2)?;
                emit(out, &format!("{:<17} TG {}  TG' {}", format!("{} model:", arch.name()), verdict_at(&art, &pair.0)?, verdict_at(&art, &pair.1)?));
            }
            let r = indistinguishability_battery(ModelClass::TandG, trials, seed)?;
            emit(out, &format!("time-and-graph: {} sampled models, {} tell the pair apart (evidence, not proof)", r.trials, r.mismatches));
        }
        Demo::Figure4 => {
            let pair = fixture_figure4_pair();
            let phi = parse_formula("Y c1").expect("named");
            emit(out, &format!("witness: {phi}"));
            emit(out, &format!("oracle:           TG {}  TG' {}", truth_at(&phi, &pair.0)?, truth_at(&phi, &pair.1)?));
            for arch in [Arch::Recursive, Arch::TandG] {
                let art = arch.compile(&phi, 1)?;
                emit(out, &format!("{:<17} TG {}  TG' {}", format!("{} model:", arch.name()), verdict_at(&art, &pair.0)?, verdict_at(&art, &pair.1)?));
            }
            let r = indistinguishability_battery(ModelClass::Global, trials, seed)?;
            emit(out, &format!("global: {} sampled models, {} tell the pair apart (evidence, not proof)", r.trials, r.mismatches));
        }
        Demo::Corollary1 => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            let fig2 = fixture_figure2_pair();
            let fig4 = fixture_figure4_pair();
            let a = parse_formula("<>(c1 & <>Y c2)").expect("named");
            let b = parse_formula("Y c1").expect("named");
            for phi in [&a, &b] {
                emit(out, &format!("{phi}: L1 {}, L2 {}", yes(in_fragment_l1(phi)), yes(in_fragment_l2(phi))));
            }
            let glob = Arch::Global.compile(&a, 2)?;
            let tandg_battery = indistinguishability_battery(ModelClass::TandG, trials, seed)?;
            emit(out, &format!("figure 2 pair: global model for {a}: {} vs {}", verdict_at(&glob, &fig2.0)?, verdict_at(&glob, &fig2.1)?));
            emit(out, &format!("               sampled time-and-graph models separating it: {}/{}", tandg_battery.mismatches, trials));
            let tandg = Arch::TandG.compile(&b, 1)?;
            let global_battery = indistinguishability_battery(ModelClass::Global, trials, seed)?;
            emit(out, &format!("figure 4 pair: time-and-graph model for {b}: {} vs {}", verdict_at(&tandg, &fig4.0)?, verdict_at(&tandg, &fig4.1)?));
            emit(out, &format!("               sampled global models separating it: {}/{}", global_battery.mismatches, trials));
            emit(out, "each architecture expresses a formula on which the other fails");
        }
    }
    Ok(())
}
