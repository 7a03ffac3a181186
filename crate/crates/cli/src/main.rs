//! `decomp`: batch front end for the decomposable-model library.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage
//! or data error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use decomposable::axioms::{check_axioms, Axiom, AxiomSuite};
use decomposable::chordal::{chordless_cycle_witness, find_chordless_cycle, find_peo, BRUTE_FORCE_CAP};
use decomposable::learn::{learn_skeleton, sample_dataset, DataCi, Dataset, LearnConfig, LearnResult, OracleCi};
use decomposable::model::{graph_model, DependencyModel, ExplicitModel};
use decomposable::verify::{
    verify_c7_strictness, verify_equivalences, verify_perfect_maps, verify_theorem1, verify_theorem2,
    verify_theorem3, VerificationSummary,
};
use decomposable::{Error, UndirectedGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "decomp", version, about = "Chordal graphs, decomposable dependency models and their axioms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide chordality; prints a perfect elimination ordering or a chordless cycle.
    Chordal {
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Check independence axioms on a graph's separation model or a model file.
    Axioms {
        /// Graph text file, or a JSON model table.
        file: PathBuf,
        /// Axioms to check (C1..C9, C9'); all when omitted.
        #[arg(long = "axiom", value_name = "AXIOM")]
        axioms: Vec<Axiom>,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustively verify a characterization over all graphs on n vertices.
    #[command(group(ArgGroup::new("property").required(true).args(["theorem", "equivalences", "c7_witness", "perfect_maps"])))]
    Verify {
        /// 1: C1-C5 and reconstruction; 2: chordal iff C6; 3: chordal iff C8.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: Option<u8>,
        /// C6, C8, C9 and C9' agree.
        #[arg(long)]
        equivalences: bool,
        /// Search for a non-chordal graph satisfying C7.
        #[arg(long)]
        c7_witness: bool,
        /// The PEO orientation of every chordal graph is a perfect map.
        #[arg(long)]
        perfect_maps: bool,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Learn a chordal skeleton from a CSV dataset or a graph's separation oracle.
    #[command(group(ArgGroup::new("source").required(true).args(["data", "oracle"])))]
    Learn {
        /// Dataset: header of variable names, then category indices.
        data: Option<PathBuf>,
        /// Answer CI queries exactly from this graph instead of data.
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Largest conditioning set to try.
        #[arg(long)]
        max_cond: Option<usize>,
        /// Triangulate the result if it is not chordal.
        #[arg(long)]
        chordalize: bool,
        /// Try every candidate separator, not only complete ones.
        #[arg(long)]
        no_c8_prune: bool,
        /// Do not fix edges from the C6 rule.
        #[arg(long)]
        no_c6_fix: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Sample a categorical dataset that factorizes along a chordal graph.
    Sample {
        graph: PathBuf,
        /// One arity for all variables, or one per variable.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        arities: Vec<usize>,
        #[arg(long)]
        rows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Render a graph in Graphviz DOT.
    ExportDot {
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure that ends the run with exit code 2.
struct Failure(String);

impl Failure {
    fn at(path: &Path, e: Error) -> Self {
        match e {
            Error::Parse { line, column, message } => {
                Failure(format!("{}:{line}:{column}: {message}", path.display()))
            }
            other => Failure(format!("{}: {other}", path.display())),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Verdict = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<UndirectedGraph, Failure> {
    UndirectedGraph::parse(&read(path)?).map_err(|e| Failure::at(path, e))
}

fn emit(output: &Output, json: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = if output.pretty {
        text()
    } else {
        serde_json::to_string_pretty(json).expect("values serialize") + "\n"
    };
    write_body(output, &body)
}

fn write_body(output: &Output, body: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn join(items: impl IntoIterator<Item = impl ToString>, sep: &str) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

fn edge_list(edges: &[(usize, usize)]) -> String {
    if edges.is_empty() {
        "(none)".into()
    } else {
        join(edges.iter().map(|(u, v)| format!("{u}-{v}")), " ")
    }
}

fn cmd_chordal(path: &Path, output: &Output) -> Verdict {
    let g = read_graph(path)?;
    if let Some(peo) = find_peo(&g) {
        let order = peo.into_vec();
        let json = json!({ "chordal": true, "peo": order });
        emit(output, &json, || format!("chordal: yes\nperfect elimination ordering: {}\n", join(&order, " ")))?;
        return Ok(true);
    }
    // the exhaustive search returns the canonical cycle but is capped
    let cycle = if g.n() <= BRUTE_FORCE_CAP {
        chordless_cycle_witness(&g)?
    } else {
        find_chordless_cycle(&g)
    }
    .ok_or_else(|| Failure("no elimination ordering but no chordless cycle".into()))?;
    let json = json!({ "chordal": false, "witness": cycle });
    emit(output, &json, || format!("chordal: no\nchordless cycle: {}\n", join(&cycle, "-")))?;
    Ok(false)
}

fn load_model(path: &Path) -> Result<Box<dyn DependencyModel>, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let table = ExplicitModel::from_json(&text).map_err(|e| Failure::at(path, e))?;
        Ok(Box::new(table))
    } else {
        let g = UndirectedGraph::parse(&text).map_err(|e| Failure::at(path, e))?;
        Ok(Box::new(graph_model(&g)))
    }
}

fn axiom_table(suite: &AxiomSuite) -> String {
    let mut out = format!("n = {}\n{:<5} {:<30} {:<6} violations\n", suite.n, "axiom", "name", "holds");
    for r in &suite.reports {
        let _ = writeln!(
            out,
            "{:<5} {:<30} {:<6} {}",
            r.axiom.label(),
            r.axiom.name(),
            if r.holds { "yes" } else { "no" },
            r.violation_count
        );
    }
    out
}

fn cmd_axioms(path: &Path, selected: &[Axiom], output: &Output) -> Verdict {
    let model = load_model(path)?;
    let axioms = if selected.is_empty() { Axiom::ALL.to_vec() } else { selected.to_vec() };
    let suite = check_axioms(&model, &axioms)?;
    let json = serde_json::to_value(&suite).expect("reports serialize");
    emit(output, &json, || axiom_table(&suite))?;
    Ok(suite.all_hold())
}

fn summary_text(s: &VerificationSummary) -> String {
    let mut out = format!("property: {}\nn: {}\ngraphs checked: {}\n", s.property, s.n, s.graphs_checked);
    if let Some(c) = s.chordal_count {
        let _ = writeln!(out, "chordal graphs: {c}");
    }
    let _ = writeln!(out, "discrepancies: {}", s.discrepancies.len());
    for d in &s.discrepancies {
        let _ = writeln!(out, "  {}: {}", edge_list(&d.edges), d.detail);
    }
    for w in &s.witnesses {
        let _ = writeln!(out, "{} (n = {}): {}", w.name, w.n, edge_list(&w.edges));
    }
    if let Some(ms) = s.elapsed_ms {
        let _ = writeln!(out, "elapsed: {ms} ms");
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: Option<u8>,
    equivalences: bool,
    c7_witness: bool,
    perfect_maps: bool,
    n: usize,
    workers: usize,
    timing: bool,
    output: &Output,
) -> Verdict {
    let mut summary = match (theorem, equivalences, c7_witness, perfect_maps) {
        (Some(1), ..) => verify_theorem1(n, workers)?,
        (Some(2), ..) => verify_theorem2(n, workers)?,
        (Some(_), ..) => verify_theorem3(n, workers)?,
        (None, true, ..) => verify_equivalences(n, workers)?,
        (None, _, true, _) => verify_c7_strictness(n)?,
        _ => verify_perfect_maps(n, workers)?,
    };
    if !timing {
        summary.elapsed_ms = None;
    }
    let json = serde_json::to_value(&summary).expect("summaries serialize");
    emit(output, &json, || summary_text(&summary))?;
    Ok(summary.passed() && (!c7_witness || !summary.witnesses.is_empty()))
}

fn learn_text(r: &LearnResult, names: Option<&[String]>) -> String {
    let label = |v: usize| names.map_or(v.to_string(), |ns| ns[v].clone());
    let edges = |es: &[(usize, usize)]| {
        if es.is_empty() {
            "(none)".to_string()
        } else {
            join(es.iter().map(|&(u, v)| format!("{}-{}", label(u), label(v))), " ")
        }
    };
    let mut out = format!("skeleton: {}\n", edges(&r.skeleton.edges()));
    let _ = writeln!(out, "fixed edges: {}", edges(&r.fixed_edges));
    let _ = writeln!(out, "fill edges: {}", edges(&r.fill_edges));
    let _ = writeln!(out, "separating sets:");
    for s in &r.sepsets {
        let _ = writeln!(out, "  {} | {} : {{{}}}", label(s.a), label(s.b), join(s.set.iter().map(label), ","));
    }
    let _ = writeln!(out, "CI tests per level: {} (total {})", join(&r.ci_tests_per_level, " "), r.ci_tests);
    out
}

fn cmd_learn(
    data: Option<&Path>,
    oracle: Option<&Path>,
    alpha: f64,
    config: &LearnConfig,
    output: &Output,
) -> Verdict {
    let (result, names) = match (data, oracle) {
        (_, Some(path)) => {
            let g = read_graph(path)?;
            (learn_skeleton(&OracleCi(graph_model(&g)), config)?, None)
        }
        (Some(path), None) => {
            let dataset = Dataset::from_csv_path(path).map_err(|e| Failure::at(path, e))?;
            let ci = DataCi::new(&dataset, alpha)?;
            (learn_skeleton(&ci, config)?, Some(dataset.names().to_vec()))
        }
        (None, None) => return Err(Failure("either a dataset or --oracle is required".into())),
    };
    let mut json = serde_json::to_value(&result).expect("results serialize");
    if let Some(ns) = &names {
        json["variables"] = json!(ns);
    }
    emit(output, &json, || learn_text(&result, names.as_deref()))?;
    Ok(true)
}

fn cmd_sample(path: &Path, arities: &[usize], rows: usize, seed: u64, output: &Output) -> Verdict {
    let g = read_graph(path)?;
    let arities = match arities {
        [a] => vec![*a; g.n()],
        list => list.to_vec(),
    };
    let data = sample_dataset(&g, &arities, rows, seed)?;
    write_body(output, &data.to_csv_string())?;
    Ok(true)
}

fn run(cli: Cli) -> Verdict {
    match cli.command {
        Command::Chordal { graph, output } => cmd_chordal(&graph, &output),
        Command::Axioms { file, axioms, output } => cmd_axioms(&file, &axioms, &output),
        Command::Verify {
            theorem,
            equivalences,
            c7_witness,
            perfect_maps,
            n,
            workers,
            timing,
            output,
        } => cmd_verify(theorem, equivalences, c7_witness, perfect_maps, n, workers as usize, timing, &output),
        Command::Learn {
            data,
            oracle,
            alpha,
            max_cond,
            chordalize,
            no_c8_prune,
            no_c6_fix,
            output,
        } => {
            let config = LearnConfig {
                max_cond,
                c8_pruning: !no_c8_prune,
                c6_fixing: !no_c6_fix,
                chordalize,
                ..LearnConfig::default()
            };
            cmd_learn(data.as_deref(), oracle.as_deref(), alpha, &config, &output)
        }
        Command::Sample {
            graph,
            arities,
            rows,
            seed,
            output,
        } => cmd_sample(&graph, &arities, rows, seed, &output),
        Command::ExportDot { graph, output } => {
            let g = read_graph(&graph)?;
            write_body(&output, &g.to_dot())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(message)) => {
            eprintln!("decomp: {message}");
            ExitCode::from(2)
        }
    }
}
