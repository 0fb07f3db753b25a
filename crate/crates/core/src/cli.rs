//! Command-line driver.
//!
//! Exit status 0 on success, 2 when a layout engine or the verifier rejects
//! the input (with a JSON reason on standard error), 1 for usage and parse
//! errors.

use crate::circular::{circular_drawing, CircularError, CircularOptions};
use crate::decompose::{DecomposeError, DEFAULT_BUDGET};
use crate::degenerate::{draw_2degenerate, draw_3degenerate, DegenerateError, DegenerateOptions};
use crate::drawing::Drawing;
use crate::graph::GraphDocument;
use crate::graph::{degeneracy_order, GraphError};
use crate::halin::{draw_halin, draw_halin_graph, HalinError, RootedTree};
use crate::io::{drawing_to_json, parse_drawing, report_to_json};
use crate::render::{to_svg, RenderOptions};
use crate::spiro::{draw_spirograph, parse_spiro_spec, SpiroError, SpiroOptions};
use crate::verify::{self, VerificationReport};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "lombardi", version, about = "Lombardi drawings of graphs")]
struct Cli {
    /// Largest accepted angular deviation, in radians [default: 1e-9, 1e-8 for spiro].
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Search budget for matchings, factors and Hamiltonian cycles.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Emit drawings even when they fail verification.
    #[arg(long, global = true)]
    unchecked: bool,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regular graph with all vertices on one circle.
    Circular {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// 2- or 3-degenerate graph by incremental insertion.
    Degenerate {
        graph: PathBuf,
        /// Defaults to the degeneracy of the graph.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        mode: Option<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Halin graph from a plane tree, or a Halin graph with `tree_edges`.
    Halin { tree: PathBuf },
    /// Symmetric graph from a spirograph spec.
    Spiro {
        spec: PathBuf,
        /// Let a circle be smaller than the one before it.
        #[arg(long)]
        allow_shrinking: bool,
    },
    /// Check a drawing and print its report.
    Verify { drawing: PathBuf },
    /// Render a drawing as SVG.
    Render {
        drawing: PathBuf,
        /// SVG output file; same as --out.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 800.0)]
        size: f64,
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        monochrome: bool,
    },
}

enum Failure {
    Usage(String),
    Rejected { reason: String, message: String, details: Value },
}

impl Failure {
    fn rejected(reason: &str, message: impl ToString, details: Value) -> Self {
        Failure::Rejected {
            reason: reason.into(),
            message: message.to_string(),
            details,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn decompose_reason(e: &DecomposeError) -> (&'static str, Value) {
    match e {
        DecomposeError::OddDegree(v) => ("OddDegree", json!({ "vertex": v })),
        DecomposeError::OddComponent => ("OddComponent", Value::Null),
        DecomposeError::NotEvenRegular => ("NotEvenRegular", Value::Null),
        DecomposeError::NotRegularBipartite => ("NotRegularBipartite", Value::Null),
        DecomposeError::NotRegular => ("NotRegular", Value::Null),
        DecomposeError::NoPerfectMatching(w) => ("NoPerfectMatching", json!(w)),
        DecomposeError::NoHamiltonianOrEvenFactor => ("NoHamiltonianOrEvenFactor", Value::Null),
        DecomposeError::SearchBudgetExceeded => ("SearchBudgetExceeded", Value::Null),
    }
}

impl From<CircularError> for Failure {
    fn from(e: CircularError) -> Self {
        let (reason, details) = match &e {
            CircularError::InfeasibleCase(_) => ("InfeasibleCase", Value::Null),
            CircularError::InvalidPlan(_) => ("InvalidPlan", Value::Null),
            CircularError::PerturbationExhausted(k) => ("PerturbationExhausted", json!({ "retries": k })),
            CircularError::Decompose(d) => decompose_reason(d),
        };
        Failure::rejected(reason, e, details)
    }
}

impl From<DegenerateError> for Failure {
    fn from(e: DegenerateError) -> Self {
        let (reason, details) = match &e {
            DegenerateError::NotTwoDegenerate(k) => ("NotTwoDegenerate", json!({ "degeneracy": k })),
            DegenerateError::NotThreeDegenerate(k) => ("NotThreeDegenerate", json!({ "degeneracy": k })),
            DegenerateError::NoClearPoint { vertex } => ("NoClearPoint", json!({ "vertex": vertex })),
            DegenerateError::CoincidentPlacement(c) => ("CoincidentPlacement", json!(c)),
            DegenerateError::CoveredCircle(c) => ("CoveredCircle", json!(c)),
            DegenerateError::Geom(_) => ("Geometry", Value::Null),
        };
        Failure::rejected(reason, e, details)
    }
}

impl From<HalinError> for Failure {
    fn from(e: HalinError) -> Self {
        let reason = match &e {
            HalinError::NotATree(_) => "NotATree",
            HalinError::LeafRoot(_) => "LeafRoot",
            HalinError::TooFewLeaves(_) => "TooFewLeaves",
            HalinError::NotHalin(_) => "NotHalin",
            HalinError::RotationMismatch(_) => "RotationMismatch",
            HalinError::BisectionFailed { .. } => "BisectionFailed",
            HalinError::Hyperbolic(_) | HalinError::Geom(_) => "Geometry",
            HalinError::Graph(g) => return Failure::Usage(g.to_string()),
        };
        Failure::rejected(reason, e, Value::Null)
    }
}

impl From<SpiroError> for Failure {
    fn from(e: SpiroError) -> Self {
        let (reason, details) = match &e {
            SpiroError::Parse { .. } | SpiroError::Invalid(_) => return Failure::Usage(e.to_string()),
            SpiroError::MultiEdgeOnExpansion(_) => ("MultiEdgeOnExpansion", Value::Null),
            SpiroError::TooManyInwardNeighbors { circle, count } => {
                ("TooManyInwardNeighbors", json!({ "circle": circle, "count": count }))
            }
            SpiroError::RootFindingFailed { circle, low, high } => {
                ("RootFindingFailed", json!({ "circle": circle, "low": low, "high": high }))
            }
            SpiroError::InconsistentThirdConstraint { circle, residual } => {
                ("InconsistentThirdConstraint", json!({ "circle": circle, "residual": residual }))
            }
            SpiroError::Geom(_) => ("Geometry", Value::Null),
        };
        Failure::rejected(reason, e, details)
    }
}

/// Read `path`, or `path.json` when `path` has no extension and is missing.
fn read_input(path: &Path) -> Result<String, Failure> {
    let mut candidates = vec![path.to_path_buf()];
    if path.extension().is_none() {
        candidates.push(path.with_extension("json"));
    }
    for p in &candidates {
        if p.is_file() {
            return std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())));
        }
    }
    Err(Failure::Usage(format!("{}: no such file", path.display())))
}

fn load_document(path: &Path) -> Result<GraphDocument, Failure> {
    GraphDocument::parse(&read_input(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_drawing(path: &Path) -> Result<Drawing, Failure> {
    parse_drawing(&read_input(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn faults(r: &VerificationReport) -> String {
    format!(
        "max deviation {:e}, {} incidence violations, {} detached edges",
        r.max_deviation,
        r.incidence_violations.len(),
        r.detached_edges.len()
    )
}

/// Refuse to emit a drawing that fails its own check.
fn certified(d: Drawing, tol: f64, unchecked: bool) -> Result<Drawing, Failure> {
    let r = verify::resolution_report(&d);
    if unchecked || r.is_lombardi(tol) {
        Ok(d)
    } else {
        Err(Failure::rejected(
            "VerificationFailed",
            faults(&r),
            json!({ "max_deviation": r.max_deviation, "worst_vertex": r.worst_vertex }),
        ))
    }
}

fn halin(path: &Path) -> Result<Drawing, Failure> {
    let doc = load_document(path)?;
    let g = doc.to_graph()?;
    let root = doc.root_id()?;
    match doc.tree_edge_ids()? {
        Some(pairs) => {
            let ids = pairs
                .iter()
                .map(|&(a, b)| {
                    g.edge_id(a, b)
                        .ok_or_else(|| Failure::Usage(format!("tree edge ({}, {}) is not an edge", g.name(a), g.name(b))))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(draw_halin_graph(&g, &ids, root)?)
        }
        None => Ok(draw_halin(&RootedTree::from_tree(&g, root)?)?),
    }
}

fn execute(cli: Cli) -> Result<String, Failure> {
    let tol = cli.tolerance.unwrap_or(1e-9);
    if !(tol > 0.0) {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    let drawing = match cli.command {
        Command::Circular { graph, seed } => {
            let g = load_document(&graph)?.to_graph()?;
            let opts = CircularOptions { seed, ..Default::default() };
            circular_drawing(&g, cli.budget, &opts)?
        }
        Command::Degenerate { graph, mode, seed } => {
            let g = load_document(&graph)?.to_graph()?;
            let opts = DegenerateOptions { seed, ..Default::default() };
            let mode = mode.unwrap_or_else(|| if degeneracy_order(&g).1 <= 2 { 2 } else { 3 });
            if mode == 2 {
                draw_2degenerate(&g, &opts)?
            } else {
                draw_3degenerate(&g, &opts)?
            }
        }
        Command::Halin { tree } => halin(&tree)?,
        Command::Spiro { spec, allow_shrinking } => {
            let spec = parse_spiro_spec(&read_input(&spec)?)?;
            let opts = SpiroOptions { increasing: !allow_shrinking, ..Default::default() };
            let d = draw_spirograph(&spec, &opts)?;
            return Ok(drawing_to_json(&certified(d, cli.tolerance.unwrap_or(1e-8), cli.unchecked)?));
        }
        Command::Verify { drawing } => {
            let d = load_drawing(&drawing)?;
            let r = verify::resolution_report(&d);
            let text = report_to_json(&r);
            if !r.is_lombardi(tol) {
                return Err(Failure::rejected(
                    "NotLombardi",
                    faults(&r),
                    serde_json::from_str(&text).expect("report is JSON"),
                ));
            }
            return Ok(text);
        }
        Command::Render { drawing, svg, size, labels, monochrome } => {
            let d = load_drawing(&drawing)?;
            if !(size > 0.0) {
                return Err(Failure::Usage("--size must be positive".into()));
            }
            let o = RenderOptions {
                size,
                margin: size / 20.0,
                labels,
                color_groups: !monochrome,
                ..Default::default()
            };
            let text = to_svg(&d, &o);
            if let Some(p) = svg {
                write_file(&p, &text)?;
                return Ok(String::new());
            }
            return Ok(text);
        }
    };
    Ok(drawing_to_json(&certified(drawing, tol, cli.unchecked)?))
}

fn write_file(p: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

/// Run the CLI on `args` (including the program name) and return the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let out = cli.out.clone();
    let result = execute(cli).and_then(|text| match &out {
        Some(p) if !text.is_empty() => write_file(p, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Rejected { reason, message, details }) => {
            let mut v = json!({ "reason": reason, "message": message });
            if !details.is_null() {
                v["details"] = details;
            }
            eprintln!("{v}");
            2
        }
    }
}
