/*!
Command-line front end for the link residual closeness library.

Exactly one subcommand per invocation. Every subcommand prints JSON to
standard output (`enumerate` prints raw graph6 lines instead) and reserves
standard error for diagnostics. Exit codes: 0 on success or MATCH, 1 when a
verification or a formula comparison finds a mismatch, 2 on usage errors.

The layer itself is single-threaded; parallelism lives in the library and
is sized once here via `--jobs`. Output is byte-identical for any thread
count, so `--jobs 1` is a determinism check, not a different mode.
*/

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use resclose::dyadic::Dyadic;
use resclose::enumerate::{self, DEFAULT_MAX_N};
use resclose::families::FamilySpec;
use resclose::formulas::{self, TheoremCase, TheoremId};
use resclose::graph::Graph;
use resclose::graph6;
use resclose::residual::{link_residual_closeness, vertex_residual_closeness};
use resclose::verify::{self, Atlas, Verdict, VerifyReport};

#[derive(Parser)]
#[command(
    name = "resclose",
    version,
    about = "Exact link residual closeness: compute values, check closed-form bounds, enumerate graphs"
)]
struct Cli {
    /// Worker threads for enumeration and verification. Defaults to all
    /// available cores; the output is identical for any value.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute closeness and residual closeness of one graph.
    Compute(ComputeArgs),
    /// Instantiate a family, optionally comparing its closed form to the
    /// directly computed value.
    Family(FamilyArgs),
    /// Evaluate a closed-form bound and its claimed extremal graphs.
    Bound(CaseArgs),
    /// Check one bound against every graph in its class.
    Verify(VerifyArgs),
    /// Stream one graph6 line per isomorphism class of order n.
    Enumerate(EnumerateArgs),
    /// Verify many cases across a range of orders.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ComputeArgs {
    /// A single graph6 record.
    #[arg(long, value_name = "RECORD")]
    graph6: Option<String>,

    /// A family as kind:params, e.g. complete:5 or clique_join:1,2,3.
    #[arg(long, value_name = "KIND:PARAMS")]
    family: Option<String>,

    /// An explicit edge list as order:u-v,..., e.g. 4:0-1,1-2,2-3.
    #[arg(long, value_name = "ORDER:EDGES")]
    edges: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    /// A family as kind:params, e.g. h_graph:3,3.
    #[arg(long, value_name = "KIND:PARAMS")]
    family: String,

    /// Also print the closed-form value next to the computed one and exit
    /// nonzero if they disagree.
    #[arg(long)]
    value: bool,
}

#[derive(Args)]
struct CaseArgs {
    /// Theorem id, e.g. cut_vertices.
    #[arg(long, value_name = "ID")]
    theorem: String,

    /// Graph order the bound is instantiated at.
    #[arg(long, value_name = "INT")]
    n: usize,

    /// Class parameter, required exactly for the ids that take one.
    #[arg(long, value_name = "INT")]
    param: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,

    /// File of graph6 records to use as the class universe instead of
    /// enumerating every graph of order n.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Graph order.
    #[arg(long, value_name = "INT")]
    n: usize,

    /// Include disconnected graphs.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Orders to sweep: a single order or an inclusive range like 5..8.
    #[arg(long, value_name = "INT|LO..HI")]
    n: String,

    /// Theorem ids to check; repeat the flag for several. Defaults to all.
    #[arg(long = "theorem", value_name = "ID")]
    theorems: Vec<String>,

    /// Also write a one-line-per-case CSV summary to this path.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

/// What `compute` was asked to analyze, echoed back so the report is
/// self-describing.
#[derive(Serialize)]
struct Parameters {
    source: &'static str,
    spec: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ComputeReport {
    order: usize,
    edges: usize,
    closeness: Dyadic,
    link_residual: Dyadic,
    critical_edges: Vec<(usize, usize)>,
    /// Absent only for the one-vertex graph, which no deletion leaves.
    vertex_residual: Option<Dyadic>,
    parameters: Parameters,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ValueComparison {
    /// Null when no closed form is wired for the family kind.
    formula: Option<Dyadic>,
    direct: Dyadic,
    agree: Option<bool>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FamilyReport {
    family: String,
    order: usize,
    edges: usize,
    graph6: String,
    value: Option<ValueComparison>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BoundReport {
    case: TheoremCase,
    value: Dyadic,
    extremal: Vec<String>,
    note: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("the global pool is built once, before any parallel work");
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Compute(args) => compute(args),
        Command::Family(args) => family(args),
        Command::Bound(args) => bound(args),
        Command::Verify(args) => verify_case(args),
        Command::Enumerate(args) => enumerate_classes(args),
        Command::Sweep(args) => sweep(args),
    }
}

fn compute(args: ComputeArgs) -> Result<ExitCode, String> {
    let (graph, parameters) = if let Some(record) = args.graph6 {
        let record = record.trim().to_string();
        let graph = graph6::decode(record.as_bytes()).map_err(|e| e.to_string())?;
        (graph, Parameters { source: "graph6", spec: record })
    } else if let Some(text) = args.family {
        let spec: FamilySpec = text.parse().map_err(|e: resclose::families::FamilyError| e.to_string())?;
        let graph = spec.instantiate();
        (graph, Parameters { source: "family", spec: spec.to_string() })
    } else {
        let text = args.edges.expect("the argument group guarantees one source");
        let graph = parse_edge_list(&text)?;
        (graph, Parameters { source: "edges", spec: text })
    };

    let link = link_residual_closeness(&graph);
    let report = ComputeReport {
        order: graph.order(),
        edges: graph.size(),
        closeness: graph.closeness(),
        link_residual: link.value,
        critical_edges: link.critical_edges,
        vertex_residual: vertex_residual_closeness(&graph).map(|r| r.value),
        parameters,
    };
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn family(args: FamilyArgs) -> Result<ExitCode, String> {
    let spec: FamilySpec = args.family.parse().map_err(|e: resclose::families::FamilyError| e.to_string())?;
    let graph = spec.instantiate();
    let value = args.value.then(|| {
        let formula = formulas::formula_value(&spec);
        let direct = link_residual_closeness(&graph).value;
        ValueComparison { formula, direct, agree: formula.map(|f| f == direct) }
    });

    let disagreement = matches!(&value, Some(c) if c.agree == Some(false));
    let report = FamilyReport {
        family: spec.to_string(),
        order: graph.order(),
        edges: graph.size(),
        graph6: graph6::encode(&graph),
        value,
    };
    print_json(&report);
    Ok(if disagreement { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn bound(args: CaseArgs) -> Result<ExitCode, String> {
    let case = parse_case(&args)?;
    let result = formulas::bound(&case);
    let report = BoundReport {
        case,
        value: result.value,
        extremal: result.extremal.iter().map(FamilySpec::to_string).collect(),
        note: result.note,
    };
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn verify_case(args: VerifyArgs) -> Result<ExitCode, String> {
    let case = parse_case(&args.case)?;
    let atlas = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let graphs = graph6::decode_lines(&text)
                .collect::<Result<Vec<Graph>, _>>()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Atlas::build(case.n(), &graphs).map_err(|e| e.to_string())?
        }
        None => Atlas::from_enumeration_with_cap(case.n(), enumerator_cap()?)
            .map_err(|e| e.to_string())?,
    };

    let report = verify::verify(&case, &atlas);
    let matched = report.verdict == Verdict::Match;
    print_json(&report);
    Ok(if matched { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn enumerate_classes(args: EnumerateArgs) -> Result<ExitCode, String> {
    let cap = enumerator_cap()?;
    let graphs = if args.all {
        enumerate::all_graphs_with_cap(args.n, cap)
    } else {
        enumerate::connected_graphs_with_cap(args.n, cap)
    }
    .map_err(|e| e.to_string())?;

    let mut out = io::BufWriter::new(io::stdout().lock());
    for graph in &graphs {
        writeln!(out, "{}", graph6::encode(graph)).map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let orders = parse_order_range(&args.n)?;
    let ids = if args.theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        let mut ids: Vec<TheoremId> = Vec::new();
        for name in &args.theorems {
            let id: TheoremId = name.parse().map_err(|e: formulas::FormulaError| e.to_string())?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
        ids
    };

    let reports = verify::sweep_with_cap(&ids, orders, enumerator_cap()?).map_err(|e| e.to_string())?;
    if let Some(path) = &args.csv {
        let mut csv = String::from(VerifyReport::CSV_HEADER);
        csv.push('\n');
        for report in &reports {
            csv.push_str(&report.csv_row());
            csv.push('\n');
        }
        fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display()))?;
    }

    let all_match = reports.iter().all(|r| r.verdict == Verdict::Match);
    print_json(&reports);
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_case(args: &CaseArgs) -> Result<TheoremCase, String> {
    let id: TheoremId = args.theorem.parse().map_err(|e: formulas::FormulaError| e.to_string())?;
    TheoremCase::new(id, args.n, args.param).map_err(|e| e.to_string())
}

/// Parses `order:u-v,u-v,...`; a bare order is the edgeless graph.
fn parse_edge_list(text: &str) -> Result<Graph, String> {
    let (order_text, edges_text) = text.split_once(':').unwrap_or((text, ""));
    let order = order_text
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("edge list {text:?} does not start with an order"))?;
    let mut edges = Vec::new();
    for token in edges_text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let endpoints = token
            .split_once('-')
            .and_then(|(u, v)| Some((u.trim().parse().ok()?, v.trim().parse().ok()?)));
        match endpoints {
            Some(edge) => edges.push(edge),
            None => return Err(format!("edge {token:?} is not of the form u-v")),
        }
    }
    Graph::from_edges(order, &edges).map_err(|e| e.to_string())
}

/// Parses a single order or an inclusive `lo..hi` range (`lo..=hi` also
/// accepted).
fn parse_order_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("orders must be an integer or an inclusive range like 5..8, got {text:?}");
    match text.split_once("..") {
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
        Some((lo_text, hi_text)) => {
            let lo: usize = lo_text.trim().parse().map_err(|_| bad())?;
            let hi_text = hi_text.trim();
            let hi: usize = hi_text.strip_prefix('=').unwrap_or(hi_text).trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(format!("order range {text:?} is empty"));
            }
            Ok(lo..=hi)
        }
    }
}

/// The enumerator cap: RESCLOSE_MAX_N when set, the built-in default
/// otherwise. Raising it past the default trades runtime for reach.
fn enumerator_cap() -> Result<usize, String> {
    match std::env::var("RESCLOSE_MAX_N") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("RESCLOSE_MAX_N must be an integer, got {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_N),
        Err(std::env::VarError::NotUnicode(_)) => Err("RESCLOSE_MAX_N must be an integer".to_string()),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serialization is infallible"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists_parse_with_and_without_edges() {
        let path = parse_edge_list("4:0-1,1-2,2-3").unwrap();
        assert_eq!(path.order(), 4);
        assert_eq!(path.size(), 3);
        assert!(path.has_edge(1, 2));

        let edgeless = parse_edge_list("3").unwrap();
        assert_eq!((edgeless.order(), edgeless.size()), (3, 0));
        let edgeless = parse_edge_list("3:").unwrap();
        assert_eq!((edgeless.order(), edgeless.size()), (3, 0));
    }

    #[test]
    fn bad_edge_lists_are_rejected_with_the_offending_token() {
        assert!(parse_edge_list("x:0-1").unwrap_err().contains("order"));
        assert!(parse_edge_list("4:0+1").unwrap_err().contains("0+1"));
        assert!(parse_edge_list("4:0-1,7-8").is_err());
        assert!(parse_edge_list("4:1-1").is_err());
    }

    #[test]
    fn order_ranges_are_inclusive_at_both_ends() {
        assert_eq!(parse_order_range("6").unwrap(), 6..=6);
        assert_eq!(parse_order_range("5..8").unwrap(), 5..=8);
        assert_eq!(parse_order_range("5..=8").unwrap(), 5..=8);
        assert!(parse_order_range("8..5").is_err());
        assert!(parse_order_range("five").is_err());
    }
}
