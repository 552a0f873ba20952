//! Command-line front end for deciding, constructing, and verifying
//! edge-disjoint caterpillar realizations of tree degree matrices.
//!
//! Exit codes: 0 = success / a realization exists; 1 = proven impossible;
//! 2 = undecided by this build; 3 = input or usage error.

use anyhow::{anyhow, Context, Result};
use catpack::engine::{realize_generic_conditional, BaseProvider};
use catpack::graphicality::erdos_gallai;
use catpack::io::{
    graph_to_dot, graph_to_json, matrix_to_json, parse_graph, parse_matrix, GraphJson,
};
use catpack::large_n::realize_large;
use catpack::model::{caterpillar_view, verify_realization, ColoredGraph, DegreeMatrix};
use catpack::oracle::{
    enumerate_matrices, exhaustive_realize, random_matrix, OracleOutcome, SearchLimits,
};
use catpack::two_trees::check_two_tree_conditions;
use catpack::Realization;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable giving the default oracle time budget in
/// milliseconds. It also lets `realize` fall back to an exhaustive base
/// case for matrices the constructions leave undecided.
const ORACLE_MS_VAR: &str = "CATPACK_ORACLE_MS";

#[derive(Parser)]
#[command(
    name = "catpack",
    version,
    about = "Edge-disjoint caterpillar realizations of tree degree matrices",
    after_help = "Exit codes: 0 success/exists, 1 not realizable, 2 undecided, 3 input error."
)]
struct Cli {
    /// Write the primary output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide realizability of a degree matrix (without printing a graph).
    Check {
        /// Matrix file (JSON rows or whitespace table); stdin if omitted.
        input: Option<PathBuf>,
    },
    /// Evaluate the exact two-row conditions, with witnesses.
    Check2 {
        /// Matrix file; stdin if omitted.
        input: Option<PathBuf>,
    },
    /// Test a plain degree sequence for graphicality.
    CheckGraphical {
        /// Sequence file (JSON list or whitespace numbers); stdin if omitted.
        input: Option<PathBuf>,
    },
    /// Construct a realization and print its graph as JSON.
    Realize {
        /// Matrix file; stdin if omitted.
        input: Option<PathBuf>,
        /// Include the construction trace in the output.
        #[arg(long)]
        trace: bool,
        /// Force the dense route for five or more rows.
        #[arg(long)]
        large: bool,
    },
    /// Verify a colored graph, optionally against a degree matrix.
    Verify {
        /// Graph file (JSON object or adjacency matrix); stdin if omitted.
        input: Option<PathBuf>,
        /// Degree matrix the graph must realize.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Decide a matrix by exhaustive search.
    Oracle {
        /// Matrix file; stdin if omitted.
        input: Option<PathBuf>,
        /// Abort after this many search nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Abort after this many milliseconds (default: CATPACK_ORACLE_MS).
        #[arg(long)]
        time_ms: Option<u64>,
        /// Disable the backbone symmetry pruning.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Enumerate canonical tree degree matrices, one JSON row list per line.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Restrict to matrices without common leaves.
        #[arg(long)]
        no_common: bool,
    },
    /// Generate a random tree degree matrix.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow distinct rows to share leaf columns.
        #[arg(long)]
        allow_common: bool,
    },
    /// Render a colored graph in Graphviz DOT form.
    ExportDot {
        /// Graph file; stdin if omitted.
        input: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("cannot read stdin")?;
            Ok(buf)
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_matrix(path: &Option<PathBuf>) -> Result<DegreeMatrix> {
    parse_matrix(&read_input(path)?).map_err(|e| anyhow!("{e}"))
}

/// Parse a graph, accepting a `{"graph": ..., "trace": ...}` envelope as
/// produced by `realize --trace`.
fn read_graph(path: &Option<PathBuf>, k: Option<usize>) -> Result<ColoredGraph> {
    let text = read_input(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(trimmed).context("invalid JSON")?;
        if let Some(inner) = value.get("graph") {
            let gj: GraphJson =
                serde_json::from_value(inner.clone()).context("invalid graph field")?;
            return gj.to_graph(k).map_err(|e| anyhow!("{e}"));
        }
    }
    parse_graph(&text, k).map_err(|e| anyhow!("{e}"))
}

fn oracle_env_ms() -> Option<u64> {
    std::env::var(ORACLE_MS_VAR).ok()?.trim().parse().ok()
}

/// Construct per the dispatcher; when the result is undecided and an
/// oracle budget is configured, retry with an exhaustive base case.
fn realize_with_fallback(m: &DegreeMatrix) -> Realization {
    let first = catpack::realize(m);
    if let Realization::Unknown { .. } = &first {
        if m.k() >= 5 && m.is_tree_matrix() && !m.has_common_leaves() {
            if let Some(ms) = oracle_env_ms() {
                let limits = SearchLimits {
                    max_nodes: None,
                    max_millis: Some(ms),
                    symmetry_pruning: true,
                };
                return realize_generic_conditional(m, BaseProvider::Oracle(limits));
            }
        }
    }
    first
}

fn realization_exit(
    output: &Option<PathBuf>,
    m: &DegreeMatrix,
    result: Realization,
    with_trace: bool,
) -> Result<u8> {
    match result {
        Realization::Exists { graph, trace } => {
            let check = verify_realization(m, &graph);
            if !check.ok {
                return Err(anyhow!(
                    "internal error: the constructed graph failed verification"
                ));
            }
            let text = if with_trace {
                let body = json!({
                    "graph": GraphJson::from_graph(&graph),
                    "trace": trace,
                });
                serde_json::to_string_pretty(&body).expect("serializable") + "\n"
            } else {
                graph_to_json(&graph) + "\n"
            };
            emit(output, &text)?;
            Ok(0)
        }
        Realization::NotExists { reason } => {
            let body = json!({ "outcome": "not_exists", "reason": reason });
            emit(
                output,
                &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
            )?;
            Ok(1)
        }
        Realization::Unknown { reason } => {
            let body = json!({ "outcome": "unknown", "reason": reason });
            emit(
                output,
                &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
            )?;
            Ok(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let output = cli.output;
    match cli.cmd {
        Cmd::Check { input } => {
            let m = read_matrix(&input)?;
            let (body, code) = match catpack::realize(&m) {
                Realization::Exists { .. } => (json!({ "outcome": "exists" }), 0),
                Realization::NotExists { reason } => {
                    (json!({ "outcome": "not_exists", "reason": reason }), 1)
                }
                Realization::Unknown { reason } => {
                    (json!({ "outcome": "unknown", "reason": reason }), 2)
                }
            };
            emit(
                &output,
                &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
            )?;
            Ok(code)
        }
        Cmd::Check2 { input } => {
            let m = read_matrix(&input)?;
            if m.k() != 2 {
                return Err(anyhow!("check2 needs exactly 2 rows, got {}", m.k()));
            }
            let report = check_two_tree_conditions(&m);
            let body = json!({
                "tree_rows": report.tree_rows,
                "column_sums_graphical": report.column_sums_graphical,
                "degree_bound_ok": report.degree_bound_ok,
                "d_max": report.d_max,
                "s_size": report.s_size,
                "realizable": report.realizable(),
                "witness": report.failure_witness(),
            });
            emit(
                &output,
                &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
            )?;
            Ok(if report.realizable() { 0 } else { 1 })
        }
        Cmd::CheckGraphical { input } => {
            let text = read_input(&input)?;
            let trimmed = text.trim();
            let seq: Vec<usize> = if trimmed.starts_with('[') {
                serde_json::from_str(trimmed).context("invalid JSON sequence")?
            } else {
                trimmed
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .context("invalid degree sequence")?
            };
            let report = erdos_gallai(&seq);
            let graphical = report.graphical;
            emit(
                &output,
                &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
            )?;
            Ok(if graphical { 0 } else { 1 })
        }
        Cmd::Realize {
            input,
            trace,
            large,
        } => {
            let m = read_matrix(&input)?;
            let result = if large {
                realize_large(&m)
            } else {
                realize_with_fallback(&m)
            };
            realization_exit(&output, &m, result, trace)
        }
        Cmd::Verify { input, matrix } => match matrix {
            Some(mpath) => {
                let m = read_matrix(&Some(mpath))?;
                let g = read_graph(&input, Some(m.k()))?;
                let report = verify_realization(&m, &g);
                let ok = report.ok;
                emit(
                    &output,
                    &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"),
                )?;
                Ok(if ok { 0 } else { 1 })
            }
            None => {
                let g = read_graph(&input, None)?;
                let colors: Vec<serde_json::Value> = (1..=g.k())
                    .map(|c| match caterpillar_view(&g, c) {
                        Ok(view) => json!({
                            "color": c,
                            "caterpillar": true,
                            "backbone_len": view.backbone.len(),
                            "legs": view.legs.len(),
                        }),
                        Err(e) => json!({
                            "color": c,
                            "caterpillar": false,
                            "reason": e.to_string(),
                        }),
                    })
                    .collect();
                let ok = colors.iter().all(|c| c["caterpillar"] == json!(true));
                let body = json!({
                    "ok": ok,
                    "n": g.n(),
                    "k": g.k(),
                    "edges": g.edge_count(),
                    "colors": colors,
                });
                emit(
                    &output,
                    &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
                )?;
                Ok(if ok { 0 } else { 1 })
            }
        },
        Cmd::Oracle {
            input,
            max_nodes,
            time_ms,
            no_symmetry,
        } => {
            let m = read_matrix(&input)?;
            let limits = SearchLimits {
                max_nodes,
                max_millis: time_ms.or_else(oracle_env_ms),
                symmetry_pruning: !no_symmetry,
            };
            let run = exhaustive_realize(&m, &limits);
            let (outcome, graph, reason, code) = match run.outcome {
                OracleOutcome::Exists(g) => ("exists", Some(GraphJson::from_graph(&g)), None, 0),
                OracleOutcome::NotExists => ("not_exists", None, None, 1),
                OracleOutcome::Unknown(why) => ("unknown", None, Some(why), 2),
            };
            let body = json!({
                "outcome": outcome,
                "nodes": run.nodes,
                "elapsed_ms": run.elapsed_ms,
                "graph": graph,
                "reason": reason,
            });
            emit(
                &output,
                &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"),
            )?;
            Ok(code)
        }
        Cmd::Enumerate { k, n, no_common } => {
            let matrices = enumerate_matrices(k, n, no_common).map_err(|e| anyhow!("{e}"))?;
            let mut text = String::new();
            for m in &matrices {
                text.push_str(&matrix_to_json(m));
                text.push('\n');
            }
            emit(&output, &text)?;
            eprintln!("{} canonical matrices", matrices.len());
            Ok(0)
        }
        Cmd::Gen {
            k,
            n,
            seed,
            allow_common,
        } => {
            let m = random_matrix(k, n, seed, allow_common).map_err(|e| anyhow!("{e}"))?;
            emit(&output, &(matrix_to_json(&m) + "\n"))?;
            Ok(0)
        }
        Cmd::ExportDot { input } => {
            let g = read_graph(&input, None)?;
            emit(&output, &graph_to_dot(&g))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
