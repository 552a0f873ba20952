//! Reading and writing degree matrices and colored graphs.
//!
//! Matrices are accepted as a JSON array of rows or as a whitespace table
//! (one row per line; blank lines and lines starting with `#` are skipped).
//! Graphs are accepted as a JSON object `{"n": ..., "edges": [{"u", "v",
//! "color"}, ...]}` or as an `n x n` symmetric adjacency matrix whose entry
//! is the edge color (0 for no edge), in either JSON or table form.
//! Vertices are 0-based in all file formats; DOT output labels them 1-based
//! for human viewing. All writers are deterministic: edges are emitted
//! sorted by `(color, u, v)`.

use crate::model::{ColoredGraph, DegreeMatrix, ModelError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn parse_err<E: std::fmt::Display>(e: E) -> IoError {
    IoError::Parse(e.to_string())
}

/// One colored edge in the JSON graph format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

/// The JSON graph format: vertex count plus a colored edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &ColoredGraph) -> Self {
        let edges: Vec<EdgeJson> = g
            .edges()
            .into_iter()
            .map(|(color, u, v)| EdgeJson { u, v, color })
            .collect();
        GraphJson { n: g.n(), edges }
    }

    /// Build the graph, with `k` colors (defaults to the largest color
    /// present, or 1 for an edgeless graph).
    pub fn to_graph(&self, k: Option<usize>) -> Result<ColoredGraph, IoError> {
        let max_color = self.edges.iter().map(|e| e.color).max().unwrap_or(0);
        let k = k.unwrap_or(max_color.max(1));
        if max_color > k {
            return Err(IoError::Parse(format!(
                "edge color {max_color} exceeds the color count {k}"
            )));
        }
        let mut g = ColoredGraph::new(self.n, k);
        for e in &self.edges {
            g.add_edge(e.u, e.v, e.color)?;
        }
        Ok(g)
    }
}

/// Parse whitespace-table rows of non-negative integers. Blank lines and
/// `#` comment lines are skipped.
fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, IoError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|e| IoError::Parse(format!("line {}: {e}", lineno + 1)))?);
    }
    if rows.is_empty() {
        return Err(IoError::Parse("no rows found".into()));
    }
    Ok(rows)
}

/// Parse a degree matrix from JSON (`[[...], ...]`) or a whitespace table.
pub fn parse_matrix(text: &str) -> Result<DegreeMatrix, IoError> {
    let trimmed = text.trim_start();
    let rows: Vec<Vec<usize>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(parse_err)?
    } else {
        parse_table(text)?
    };
    Ok(DegreeMatrix::new(rows)?)
}

/// Serialize a matrix as compact JSON rows.
pub fn matrix_to_json(m: &DegreeMatrix) -> String {
    serde_json::to_string(m.rows()).expect("matrix serialization cannot fail")
}

/// Interpret a square symmetric matrix of colors (0 = no edge) as a graph.
fn graph_from_adjacency(rows: Vec<Vec<usize>>, k: Option<usize>) -> Result<ColoredGraph, IoError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Parse(format!(
            "adjacency matrix must be square; got {n} rows"
        )));
    }
    for (u, row) in rows.iter().enumerate() {
        if row[u] != 0 {
            return Err(IoError::Parse(format!("vertex {u} has a self-loop")));
        }
        for (v, &c) in row.iter().enumerate().skip(u + 1) {
            if c != rows[v][u] {
                return Err(IoError::Parse(format!(
                    "adjacency matrix is not symmetric at ({u}, {v})"
                )));
            }
        }
    }
    let max_color = rows
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0);
    let k = k.unwrap_or(max_color.max(1));
    if max_color > k {
        return Err(IoError::Parse(format!(
            "edge color {max_color} exceeds the color count {k}"
        )));
    }
    let mut g = ColoredGraph::new(n, k);
    for (u, row) in rows.iter().enumerate() {
        for (v, &c) in row.iter().enumerate().skip(u + 1) {
            if c != 0 {
                g.add_edge(u, v, c)?;
            }
        }
    }
    Ok(g)
}

/// Parse a colored graph. Accepts the JSON object format, a JSON adjacency
/// matrix, or a whitespace adjacency table. `k` forces the color count
/// (colors beyond it are rejected); otherwise the largest color present is
/// used.
pub fn parse_graph(text: &str, k: Option<usize>) -> Result<ColoredGraph, IoError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let gj: GraphJson = serde_json::from_str(trimmed).map_err(parse_err)?;
        gj.to_graph(k)
    } else if trimmed.starts_with('[') {
        let rows: Vec<Vec<usize>> = serde_json::from_str(trimmed).map_err(parse_err)?;
        graph_from_adjacency(rows, k)
    } else {
        graph_from_adjacency(parse_table(text)?, k)
    }
}

/// Serialize a graph in the JSON object format (pretty-printed, edges
/// sorted by color, then endpoints).
pub fn graph_to_json(g: &ColoredGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g))
        .expect("graph serialization cannot fail")
}

/// Qualitative eight-color palette cycled over edge colors in DOT output.
const DOT_PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Render the graph in Graphviz DOT form. Vertices are printed 1-based;
/// each color gets a palette hue and an edge label. Output is
/// byte-deterministic for a given graph.
pub fn graph_to_dot(g: &ColoredGraph) -> String {
    let mut out = String::new();
    out.push_str("graph realization {\n");
    out.push_str("  node [shape=circle fontsize=10];\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {};\n", v + 1));
    }
    for (color, u, v) in g.edges() {
        let hue = DOT_PALETTE[(color - 1) % DOT_PALETTE.len()];
        out.push_str(&format!(
            "  {} -- {} [color=\"{}\" label=\"{}\"];\n",
            u + 1,
            v + 1,
            hue,
            color
        ));
    }
    out.push_str("}\n");
    out
}
