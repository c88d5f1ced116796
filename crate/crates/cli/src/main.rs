use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drgsym::audit::audit;
use drgsym::automorphisms::{
    automorphism_group_with, is_distance_transitive, AutError, AutOptions,
};
use drgsym::certifier::{certify, Certificate, CertifyError, CertifyOptions, ModeRequest, Verdict};
use drgsym::drg::{is_distance_regular_with, srg_params, DrgCheck};
use drgsym::families::{self, FamilyError, FamilySpec};
use drgsym::graph::{Graph, GraphError};
use drgsym::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use drgsym::tables::{reproduce_tables, TableError};
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "drgsym",
    version,
    about = "Distance-regular graphs and certificates of no quantum symmetry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of a graph family.
    Family(FamilyArgs),
    /// Print invariants of a graph.
    Analyze(AnalyzeArgs),
    /// Produce a certificate for a graph.
    Certify(CertifyArgs),
    /// Reproduce the reference tables and diff them against the embedded expectations.
    Tables(TablesArgs),
    /// Re-verify a certificate against a graph.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    /// Family spec such as `named:heawood`, `odd:4` or `hamming:2,3`.
    #[arg(long, conflicts_with = "graph")]
    family: Option<String>,
    /// Graph file, `-` for stdin.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long = "in", value_enum, default_value_t = GraphFormat::Graph6)]
    input: GraphFormat,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name (odd, hamming, johnson, kneser, paley, cycle, complete,
    /// complete-bipartite, crown, cube, named), or a full spec like `odd:4`.
    name: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Graph name for the `named` family.
    #[arg(long = "name")]
    graph_name: Option<String>,
    /// Graph encoding for text output.
    #[arg(long = "as", value_enum, default_value_t = GraphFormat::Edges)]
    encoding: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Node budget for the automorphism search.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "auto")]
    mode: ModeRequest,
    /// Lookup budget per rule and class; also caps automorphism search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Ignore recorded verdicts and report only what the rules establish.
    #[arg(long)]
    no_knowledge_base: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Only table 1 or table 2.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: Option<u8>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AuditArgs {
    /// Certificate JSON file, `-` for stdin.
    #[arg(long)]
    cert: PathBuf,
    /// Graph to audit against. Defaults to the certificate's family.
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) | CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Aut(a) => a.into(),
            CertifyError::Family(f) => f.into(),
            CertifyError::Disconnected
            | CertifyError::Empty
            | CertifyError::OrbitModeUnavailable(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            // A closed pipe is not worth an error.
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

/// Loads the graph and, for family sources, its spec.
fn load(source: &Source) -> Result<Option<(Graph, Option<FamilySpec>)>, CliError> {
    if let Some(s) = &source.family {
        let spec: FamilySpec = s.parse()?;
        return Ok(Some((families::build(&spec)?.graph, Some(spec))));
    }
    let Some(path) = &source.graph else {
        return Ok(None);
    };
    let text = read_input(path)?;
    let g = match source.input {
        GraphFormat::Graph6 => from_graph6(text.trim())?,
        GraphFormat::Edges => from_edge_list(&text)?,
    };
    Ok(Some((g, None)))
}

fn require(source: &Source) -> Result<(Graph, Option<FamilySpec>), CliError> {
    load(source)?.ok_or_else(|| CliError::Usage("give --family or --graph".into()))
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    if args.name.contains(':') {
        return Ok(args.name.parse()?);
    }
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("family {} needs --{flag}", args.name)))
    };
    let text = match args.name.as_str() {
        "named" => {
            let name = args
                .graph_name
                .as_deref()
                .ok_or_else(|| CliError::Usage("family named needs --name".into()))?;
            format!("named:{name}")
        }
        "odd" => format!("odd:{}", need(args.k, "k")?),
        "hamming" => format!("hamming:{},{}", need(args.d, "d")?, need(args.q, "q")?),
        "johnson" | "kneser" => format!(
            "{}:{},{}",
            args.name,
            need(args.n, "n")?,
            need(args.k, "k")?
        ),
        "paley" => format!("paley:{}", need(args.q, "q")?),
        other => format!("{other}:{}", need(args.n, "n")?),
    };
    Ok(text.parse()?)
}

fn run_family(args: &FamilyArgs) -> Result<(), CliError> {
    let spec = family_spec(args)?;
    let fg = families::build(&spec)?;
    let g = &fg.graph;
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "spec": spec.to_string(),
            "name": spec.display_name(),
            "order": g.order(),
            "edges": g.edge_count(),
            "graph6": to_graph6(g),
            "labels": fg.labels,
        }))
        .expect("plain JSON values serialize"),
        Format::Text => match args.encoding {
            GraphFormat::Graph6 => to_graph6(g),
            GraphFormat::Edges => to_edge_list(g),
        },
    };
    emit(&args.output.out, &text)
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let (g, spec) = require(&args.source)?;
    let dd = g.distances();
    let connected = dd.is_connected();
    let array = if connected {
        match is_distance_regular_with(&g, &dd) {
            Ok(DrgCheck::Regular(ia)) => Some(ia.to_string()),
            _ => None,
        }
    } else {
        None
    };
    let options = AutOptions {
        node_budget: args.budget.unwrap_or(AutOptions::default().node_budget),
    };
    let aut = automorphism_group_with(&g, &options)?;
    let diameter = connected.then(|| dd.diameter());
    let orbits: Vec<usize> = match diameter {
        Some(d) => (1..=d).map(|m| aut.orbits_at(&dd, m)).collect(),
        None => Vec::new(),
    };
    let transitive = connected && is_distance_transitive(&dd, &aut);
    let srg = srg_params(&g).map(|p| (p.n, p.k, p.lambda, p.mu));
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "family": spec.map(|s| s.to_string()),
            "order": g.order(),
            "edges": g.edge_count(),
            "degree": g.regular_degree(),
            "girth": g.girth(),
            "clique_number": g.clique_number(),
            "diameter": diameter,
            "intersection_array": array,
            "strongly_regular": srg,
            "aut_order": aut.order().to_string(),
            "aut_generators": aut.generators().len(),
            "pair_orbits_by_distance": orbits,
            "distance_transitive": transitive,
        }))
        .expect("plain JSON values serialize"),
        Format::Text => {
            let or_dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            let mut lines = Vec::new();
            if let Some(s) = spec {
                lines.push(format!("graph: {} ({s})", s.display_name()));
            }
            lines.push(format!("order: {}", g.order()));
            lines.push(format!("edges: {}", g.edge_count()));
            lines.push(format!(
                "degree: {}",
                or_dash(g.regular_degree().map(|k| k.to_string()))
            ));
            lines.push(format!(
                "girth: {}",
                g.girth().map_or("acyclic".into(), |x| x.to_string())
            ));
            lines.push(format!("clique number: {}", g.clique_number()));
            lines.push(format!(
                "diameter: {}",
                diameter.map_or("infinite".into(), |d| d.to_string())
            ));
            lines.push(format!(
                "intersection array: {}",
                array.unwrap_or_else(|| "not distance-regular".into())
            ));
            if let Some((n, k, l, m)) = srg {
                lines.push(format!("strongly regular: ({n},{k},{l},{m})"));
            }
            lines.push(format!("aut order: {}", aut.order()));
            lines.push(format!("aut generators: {}", aut.generators().len()));
            let orbits: Vec<String> = orbits.iter().map(|o| o.to_string()).collect();
            lines.push(format!("pair orbits by distance: [{}]", orbits.join(", ")));
            lines.push(format!(
                "distance-transitive: {}",
                if transitive { "yes" } else { "no" }
            ));
            lines.join("\n")
        }
    };
    emit(&args.output.out, &text)
}

fn run_certify(args: &CertifyArgs) -> Result<(), CliError> {
    let (g, spec) = require(&args.source)?;
    let mut options = CertifyOptions {
        mode: args.mode,
        use_knowledge_base: !args.no_knowledge_base,
        label: spec.map(|s| s.display_name()),
        ..Default::default()
    };
    if let Some(b) = args.budget {
        options.search_budget = b;
        options.aut_budget = b;
    }
    let cert = certify(&g, spec.as_ref(), &options)?;
    let text = match args.format {
        Format::Json => cert.to_json_pretty(),
        Format::Text => cert.render_text(),
    };
    emit(&args.out, &text)?;
    let budget_hit = cert.notes.iter().any(|n| n.contains("budget"));
    if budget_hit && matches!(cert.verdict, Verdict::Inconclusive { .. }) {
        return Err(CliError::Budget(format!(
            "{}: search budget exhausted",
            cert.graph.label
        )));
    }
    Ok(())
}

fn run_tables(args: &TablesArgs) -> Result<(), CliError> {
    let report = reproduce_tables(args.which)?;
    let text = match args.output.format {
        Format::Json => report.to_json(),
        Format::Text => report.render_text(),
    };
    emit(&args.output.out, &text)?;
    let count = report.mismatches().count();
    if count > 0 {
        return Err(CliError::Mismatch(format!("{count} table mismatches")));
    }
    Ok(())
}

fn run_audit(args: &AuditArgs) -> Result<(), CliError> {
    let cert = Certificate::from_json(&read_input(&args.cert)?)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let g = match load(&args.source)? {
        Some((g, _)) => g,
        None => match cert.family {
            Some(spec) => families::build(&spec)?.graph,
            None => {
                return Err(CliError::Usage(
                    "certificate has no family; give --family or --graph".into(),
                ))
            }
        },
    };
    let report = audit(&cert, &g);
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "graph": cert.graph.label,
            "verdict": cert.verdict.to_string(),
            "passed": report.passed(),
            "checked_applications": report.checked_applications,
            "failure": report.failure,
        }))
        .expect("plain JSON values serialize"),
        Format::Text => report.to_string(),
    };
    emit(&args.output.out, &text)?;
    match report.failure {
        Some(why) => Err(CliError::Mismatch(why)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Family(a) => run_family(a),
        Command::Analyze(a) => run_analyze(a),
        Command::Certify(a) => run_certify(a),
        Command::Tables(a) => run_tables(a),
        Command::Audit(a) => run_audit(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("drgsym: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
