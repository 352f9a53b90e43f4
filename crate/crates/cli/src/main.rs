mod expected;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lstar::appendix::{
    a_list, b_list_violations, coefficient_is_safe, forbidden_rooted, load_corpus, minimal_non_generalized_line_graphs,
    verify_forbidden_rooted, verify_path_extension_limits, CorpusGraph, ForbiddenReport, LimitReport, Source,
    PATH_EXTENSION_CORPUS,
};
use lstar::edges::{parse_edges, serialize_graph, EdgeString};
use lstar::enum_maverick::{self, enumerate_mavericks_with, MaverickOptions};
use lstar::enum_rooted::{self, annotate_ell0, enumerate_rooted, RootedRecord};
use lstar::iso::isomorphic;
use lstar::spectral::{gate_lambda_star, lambda1_interval, Gate};
use lstar::twisted::{self, filter_twisted, TpeWitness};
use lstar::{Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "lstar", version, about = "Graphs with smallest eigenvalue in (-lambda*, -2)")]
struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "LSTAR_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the rooted catalog.
    EnumRooted {
        /// Fail unless the counts match the published table.
        #[arg(long)]
        expect_paper: bool,
    },
    /// Enumerate the maverick graphs.
    EnumMaverick {
        #[arg(long)]
        expect_paper: bool,
        /// Dump every completed level here.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Continue from the last level in the checkpoint directory.
        #[arg(long, requires = "checkpoint_dir")]
        resume: bool,
    },
    /// List the twisted mavericks with their witnesses.
    EnumTwisted {
        #[arg(long)]
        expect_paper: bool,
    },
    /// Determinants of the eight forbidden rooted graphs at 101/50.
    VerifyForbidden,
    /// Path-extension limit certificates at 95/47.
    VerifyAppendix {
        /// Corpus of E6, B- and G-list graphs; defaults to the bundled one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Certified interval around the smallest eigenvalue of a graph.
    Lambda1 {
        /// Edge string, e.g. `0112`.
        edges: String,
        #[arg(long, default_value_t = 1e-6, value_parser = positive_float)]
        tol: f64,
    },
    /// Quick consistency checks.
    Selfcheck,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

/// Output of a command and whether its checks held.
struct Outcome {
    text: String,
    ok: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Corpus(_) | Error::Io(_) | Error::OrderTooLarge { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RootedOutput {
    entries: Vec<RootedRecord>,
    size_histogram: Vec<usize>,
    maximal: usize,
}

fn enum_rooted_cmd(format: Format, expect: bool) -> Result<Outcome, Failure> {
    let mut catalog = enumerate_rooted()?;
    annotate_ell0(&mut catalog)?;
    let histogram = enum_rooted::size_histogram(&catalog);
    let maximal = catalog.iter().filter(|e| e.maximal).count();
    let ok = !expect
        || (catalog.len() == expected::ROOTED_TOTAL
            && maximal == expected::ROOTED_MAXIMAL
            && expected::histogram_matches(&histogram, 0, &expected::ROOTED_SIZES));
    let text = match format {
        Format::Text => enum_rooted::to_text(&catalog),
        Format::Json => json(&RootedOutput {
            entries: catalog.iter().map(|e| e.record()).collect(),
            size_histogram: histogram,
            maximal,
        }),
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct GraphRecord {
    order: usize,
    edges: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<TpeWitness>,
}

#[derive(Serialize)]
struct GraphListOutput {
    graphs: Vec<GraphRecord>,
    order_histogram: Vec<usize>,
}

fn graph_records(graphs: &[Graph]) -> Result<Vec<GraphRecord>, Failure> {
    graphs
        .iter()
        .map(|g| Ok(GraphRecord { order: g.order(), edges: serialize_graph(g)?, witness: None }))
        .collect()
}

fn enum_maverick_cmd(
    format: Format,
    expect: bool,
    checkpoint_dir: Option<PathBuf>,
    resume: bool,
) -> Result<Outcome, Failure> {
    let run = enumerate_mavericks_with(&MaverickOptions { checkpoint_dir, resume, max_order: None })?;
    let histogram = enum_maverick::order_histogram(&run.mavericks);
    let ok = !expect
        || (run.mavericks.len() == expected::MAVERICK_TOTAL
            && expected::histogram_matches(&histogram, 9, &expected::MAVERICK_ORDERS)
            && run.level_sizes.get(20).is_none_or(|&n| n == 0));
    let text = match format {
        Format::Text => enum_maverick::to_text(&run.mavericks)?,
        Format::Json => json(&GraphListOutput { graphs: graph_records(&run.mavericks)?, order_histogram: histogram }),
    };
    Ok(Outcome { text, ok })
}

fn enum_twisted_cmd(format: Format, expect: bool) -> Result<Outcome, Failure> {
    let run = enumerate_mavericks_with(&MaverickOptions::default())?;
    let tw = filter_twisted(&run.mavericks)?;
    let histogram = twisted::order_histogram(&tw);
    let ok = !expect
        || (tw.len() == expected::TWISTED_TOTAL && expected::histogram_matches(&histogram, 10, &expected::TWISTED_ORDERS));
    let text = match format {
        Format::Text => twisted::to_text(&tw)?,
        Format::Json => {
            let graphs = tw
                .iter()
                .map(|t| {
                    Ok(GraphRecord { order: t.graph.order(), edges: serialize_graph(&t.graph)?, witness: Some(t.witness) })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            json(&GraphListOutput { graphs, order_histogram: histogram })
        }
    };
    Ok(Outcome { text, ok })
}

fn forbidden_text(r: &ForbiddenReport) -> String {
    let mut s = String::new();
    for row in &r.rows {
        let sign = if row.negative { "negative" } else { "nonnegative" };
        s.push_str(&format!("{}\t{}\t{}\n", row.label, row.determinant, sign));
    }
    s.push_str(&format!("# {}\n", if r.passed { "all negative" } else { "FAILED" }));
    s
}

fn verify_forbidden_cmd(format: Format) -> Result<Outcome, Failure> {
    let r = verify_forbidden_rooted(&forbidden_rooted())?;
    let text = match format {
        Format::Text => forbidden_text(&r),
        Format::Json => json(&r),
    };
    Ok(Outcome { ok: r.passed, text })
}

#[derive(Serialize)]
struct AppendixOutput {
    coefficient_safe: bool,
    b_list_violations: Vec<String>,
    limits: LimitReport,
}

fn appendix_text(out: &AppendixOutput) -> String {
    let mut s = format!("# coefficient 6/7 below the limit constant: {}\n", out.coefficient_safe);
    for v in &out.b_list_violations {
        s.push_str(&format!("# B-list: {v}\n"));
    }
    let r = &out.limits;
    s.push_str(&format!("# checked {} graphs, skipped {}\n", r.checked.len(), r.skipped.len()));
    for sv in &r.survivors {
        let roots: Vec<String> = sv.roots.iter().map(|v| v.to_string()).collect();
        s.push_str(&format!("{}\t{}\t{}\t{:?}\n", sv.label, roots.join(","), sv.determinant, sv.exception));
    }
    for d in &r.disagreements {
        s.push_str(&format!("# disagreement: {d}\n"));
    }
    s
}

fn verify_appendix_cmd(format: Format, corpus: Option<PathBuf>) -> Result<Outcome, Failure> {
    let text = match corpus {
        Some(path) => fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => PATH_EXTENSION_CORPUS.to_string(),
    };
    let loaded = load_corpus(&text)?;
    let mut entries = a_list();
    entries.extend(loaded.iter().cloned());
    let out = AppendixOutput {
        coefficient_safe: coefficient_is_safe()?,
        b_list_violations: b_list_violations(&loaded),
        limits: verify_path_extension_limits(&entries)?,
    };
    let ok = out.coefficient_safe && out.b_list_violations.is_empty() && out.limits.passed;
    let text = match format {
        Format::Text => appendix_text(&out),
        Format::Json => json(&out),
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct Interval {
    lo: f64,
    hi: f64,
}

fn lambda1_cmd(format: Format, edges: &str, tol: f64) -> Result<Outcome, Failure> {
    let g = match parse_edges(edges).map_err(|e| Failure::Usage(format!("edges {edges:?}: {e}")))? {
        EdgeString::Plain(g) => g,
        EdgeString::Rooted(h) => h.graph().clone(),
    };
    let (lo, hi) = lambda1_interval(&g, tol);
    let text = match format {
        Format::Text => format!("{lo}\t{hi}\n"),
        Format::Json => json(&Interval { lo, hi }),
    };
    Ok(Outcome { text, ok: true })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
}

fn selfcheck_cmd(format: Format) -> Result<Outcome, Failure> {
    let mut checks = Vec::new();
    let forbidden = verify_forbidden_rooted(&forbidden_rooted())?;
    checks.push(Check { name: "forbidden rooted determinants", passed: forbidden.passed });
    checks.push(Check { name: "appendix coefficient", passed: coefficient_is_safe()? });
    let corpus = load_corpus(PATH_EXTENSION_CORPUS)?;
    checks.push(Check { name: "B-list structure", passed: b_list_violations(&corpus).is_empty() });
    let generated = minimal_non_generalized_line_graphs(7);
    let listed: Vec<&Graph> = corpus
        .iter()
        .filter(|e| e.source == Source::GList)
        .filter_map(|e| match &e.graph {
            CorpusGraph::Plain(g) => Some(g),
            CorpusGraph::Rooted(_) => None,
        })
        .collect();
    let g_ok = generated.len() == listed.len() && generated.iter().all(|g| listed.iter().any(|h| isomorphic(*h, g)));
    checks.push(Check { name: "G-list matches generation", passed: g_ok });
    let mut entries = a_list();
    entries.extend(corpus);
    checks.push(Check { name: "path-extension limits", passed: verify_path_extension_limits(&entries)?.passed });
    let (lo, hi) = lambda1_interval(&Graph::e_graph(10), 1e-7);
    checks.push(Check { name: "lambda_1(E10)", passed: (lo - -2.006594).abs() < 1e-5 && (hi - -2.006594).abs() < 1e-5 });
    checks.push(Check { name: "gate at E10", passed: gate_lambda_star(&Graph::e_graph(10))? == Gate::Above });
    let small = enumerate_mavericks_with(&MaverickOptions { max_order: Some(9), ..Default::default() })?;
    checks.push(Check { name: "order-9 mavericks", passed: small.mavericks.len() == expected::MAVERICK_ORDERS[0] });
    let ok = checks.iter().all(|c| c.passed);
    let text = match format {
        Format::Text => checks
            .iter()
            .map(|c| format!("{}\t{}\n", if c.passed { "PASS" } else { "FAIL" }, c.name))
            .collect(),
        Format::Json => json(&checks),
    };
    Ok(Outcome { text, ok })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let f = cli.format;
    match cli.command {
        Command::EnumRooted { expect_paper } => enum_rooted_cmd(f, expect_paper),
        Command::EnumMaverick { expect_paper, checkpoint_dir, resume } => {
            enum_maverick_cmd(f, expect_paper, checkpoint_dir, resume)
        }
        Command::EnumTwisted { expect_paper } => enum_twisted_cmd(f, expect_paper),
        Command::VerifyForbidden => verify_forbidden_cmd(f),
        Command::VerifyAppendix { corpus } => verify_appendix_cmd(f, corpus),
        Command::Lambda1 { edges, tol } => lambda1_cmd(f, &edges, tol),
        Command::Selfcheck => selfcheck_cmd(f),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.map_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()), |j| j as usize);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --jobs {jobs}: {e}");
            return ExitCode::from(2);
        }
    };
    let out = cli.out.clone();
    match pool.install(|| run(cli)) {
        Ok(outcome) => {
            if let Err(e) = emit(&out, &outcome.text) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
