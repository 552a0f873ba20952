//! Core data types: degree matrices, edge-colored graphs, caterpillar
//! decomposition views, realization verification, and canonical forms.
//!
//! Conventions used across the crate:
//! - vertices are `0`-based everywhere in the library and in JSON;
//! - colors are `1`-based (`color = row + 1`), so row `r` of a degree matrix
//!   prescribes the degrees of the color-`r+1` tree;
//! - an edge-colored graph carries at most one edge per unordered vertex
//!   pair across *all* colors (the realizations we build are edge-disjoint
//!   unions of trees inside a simple graph).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors for the core model types.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("matrix rows must all have the same length")]
    RaggedRows,
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("color {0} out of range 1..={1}")]
    ColorOutOfRange(usize, usize),
    #[error("pair {{{0}, {1}}} already carries color {2}")]
    PairAlreadyUsed(usize, usize, usize),
    #[error("no edge between {0} and {1}")]
    EdgeNotPresent(usize, usize),
    #[error("color {color} is not a caterpillar: {reason}")]
    NotACaterpillar { color: usize, reason: String },
}

/// A `k x n` matrix of prescribed degrees: row `r` gives, per vertex, the
/// degree that vertex must have in the color-`r+1` tree.
///
/// The only structural invariant is shape (non-empty, rectangular).
/// Being a tree row / path row / having common leaves are *predicates*,
/// not constructor requirements, so that reports can describe invalid input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeMatrix {
    rows: Vec<Vec<usize>>,
}

impl DegreeMatrix {
    /// Build a matrix from rows; fails on empty or ragged input.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ModelError::EmptyMatrix);
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(ModelError::RaggedRows);
        }
        Ok(DegreeMatrix { rows })
    }

    /// Number of rows (colors).
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (vertices).
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.rows[r][c]
    }

    /// A tree row is positive everywhere and sums to `2n - 2`: exactly the
    /// degree sequences of spanning trees on `n` labeled vertices.
    pub fn is_tree_row(&self, r: usize) -> bool {
        let row = &self.rows[r];
        row.iter().all(|&d| d >= 1) && row.iter().sum::<usize>() == 2 * self.n() - 2
    }

    /// A path row is a tree row with exactly two entries equal to 1
    /// (equivalently: a tree row whose entries are all 1 or 2).
    pub fn is_path_row(&self, r: usize) -> bool {
        self.is_tree_row(r) && self.rows[r].iter().filter(|&&d| d == 1).count() == 2
    }

    pub fn is_tree_matrix(&self) -> bool {
        (0..self.k()).all(|r| self.is_tree_row(r))
    }

    pub fn all_rows_paths(&self) -> bool {
        (0..self.k()).all(|r| self.is_path_row(r))
    }

    pub fn column_sum(&self, c: usize) -> usize {
        self.rows.iter().map(|row| row[c]).sum()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.n()).map(|c| self.column_sum(c)).collect()
    }

    /// Columns where row `r` prescribes degree 1.
    pub fn leaf_columns(&self, r: usize) -> Vec<usize> {
        (0..self.n()).filter(|&c| self.rows[r][c] == 1).collect()
    }

    /// Columns in which two or more rows prescribe degree 1.
    pub fn common_leaf_columns(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&c| self.rows.iter().filter(|row| row[c] == 1).count() >= 2)
            .collect()
    }

    /// True when some vertex is a leaf in two or more rows.
    pub fn has_common_leaves(&self) -> bool {
        !self.common_leaf_columns().is_empty()
    }
}

/// Shape and predicate summary for one row of a degree matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub row: usize,
    pub sum: usize,
    pub min_entry: usize,
    pub is_tree: bool,
    pub is_path: bool,
    pub leaf_columns: Vec<usize>,
}

/// Full predicate report for a degree matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<RowReport>,
    pub is_tree_matrix: bool,
    pub all_rows_paths: bool,
    pub common_leaf_columns: Vec<usize>,
    pub has_common_leaves: bool,
    pub column_sums: Vec<usize>,
}

/// Describe a matrix: per-row tree/path predicates and shared-leaf columns.
/// Never fails; invalid shapes are prevented by `DegreeMatrix::new`.
pub fn validate_matrix(m: &DegreeMatrix) -> MatrixReport {
    let rows = (0..m.k())
        .map(|r| RowReport {
            row: r,
            sum: m.row(r).iter().sum(),
            min_entry: *m.row(r).iter().min().unwrap(),
            is_tree: m.is_tree_row(r),
            is_path: m.is_path_row(r),
            leaf_columns: m.leaf_columns(r),
        })
        .collect();
    MatrixReport {
        k: m.k(),
        n: m.n(),
        rows,
        is_tree_matrix: m.is_tree_matrix(),
        all_rows_paths: m.all_rows_paths(),
        common_leaf_columns: m.common_leaf_columns(),
        has_common_leaves: m.has_common_leaves(),
        column_sums: m.column_sums(),
    }
}

/// An edge-colored simple graph on vertices `0..n` with colors `1..=k`.
/// At most one edge (hence one color) per unordered vertex pair: inserting
/// a pair that is already present under any color is an error, which makes
/// edge-disjointness of the color classes structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    k: usize,
    /// Upper-triangle pair table: 0 = absent, else the color.
    pairs: Vec<u16>,
    /// Per-color degree table, kept incrementally.
    degrees: Vec<Vec<u32>>,
    edge_count: usize,
}

impl ColoredGraph {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k <= u16::MAX as usize, "color count out of range");
        let pair_slots = n * n.saturating_sub(1) / 2;
        ColoredGraph {
            n,
            k,
            pairs: vec![0; pair_slots],
            degrees: vec![vec![0; n]; k],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn pair_index(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * self.n - a * (a + 1) / 2 + (b - a - 1)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), ModelError> {
        if u >= self.n {
            return Err(ModelError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(ModelError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(ModelError::SelfLoop(u));
        }
        Ok(())
    }

    /// Insert an edge; fails if the pair is already used by any color.
    pub fn add_edge(&mut self, u: usize, v: usize, color: usize) -> Result<(), ModelError> {
        self.check_pair(u, v)?;
        if color == 0 || color > self.k {
            return Err(ModelError::ColorOutOfRange(color, self.k));
        }
        let idx = self.pair_index(u, v);
        if self.pairs[idx] != 0 {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            return Err(ModelError::PairAlreadyUsed(a, b, self.pairs[idx] as usize));
        }
        self.pairs[idx] = color as u16;
        self.degrees[color - 1][u] += 1;
        self.degrees[color - 1][v] += 1;
        self.edge_count += 1;
        Ok(())
    }

    /// Remove the edge on `{u, v}`, returning the color it carried.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<usize, ModelError> {
        self.check_pair(u, v)?;
        let idx = self.pair_index(u, v);
        if self.pairs[idx] == 0 {
            return Err(ModelError::EdgeNotPresent(u, v));
        }
        let color = self.pairs[idx] as usize;
        self.pairs[idx] = 0;
        self.degrees[color - 1][u] -= 1;
        self.degrees[color - 1][v] -= 1;
        self.edge_count -= 1;
        Ok(color)
    }

    /// The color on pair `{u, v}`, if any.
    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        match self.pairs[self.pair_index(u, v)] {
            0 => None,
            c => Some(c as usize),
        }
    }

    pub fn pair_used(&self, u: usize, v: usize) -> bool {
        self.color_of(u, v).is_some()
    }

    /// Degree of `v` within one color class.
    pub fn degree(&self, color: usize, v: usize) -> usize {
        self.degrees[color - 1][v] as usize
    }

    /// Total degree of `v` over all colors.
    pub fn total_degree(&self, v: usize) -> usize {
        self.degrees.iter().map(|d| d[v] as usize).sum()
    }

    /// All edges as `(color, u, v)` with `u < v`, sorted by `(color, u, v)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if let Some(c) = self.color_of(u, v) {
                    out.push((c, u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edges of one color as `(u, v)` with `u < v`, sorted.
    pub fn edges_of_color(&self, color: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.color_of(u, v) == Some(color) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Caterpillar structure of one color class.
///
/// - `backbone`: the non-leaf vertices in path order, oriented so that
///   `backbone[0] < backbone[last]`; empty for a single edge.
/// - `legs`: every (backbone vertex, leaf) edge, sorted.
/// - `spine`: the backbone extended by one lowest-index leaf at each end;
///   for a single edge `{u, v}` it is `[u, v]` with `u < v`; for a star it
///   is `[lowest leaf, center, second-lowest leaf]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaterpillarView {
    pub backbone: Vec<usize>,
    pub legs: Vec<(usize, usize)>,
    pub spine: Vec<usize>,
}

impl CaterpillarView {
    /// Number of edges along the spine.
    pub fn spine_edges(&self) -> usize {
        self.spine.len() - 1
    }

    /// Consecutive spine pairs as edges.
    pub fn spine_edge_list(&self) -> Vec<(usize, usize)> {
        self.spine.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Extract the caterpillar structure of `color` in `g`, or explain why the
/// color class is not a caterpillar (not a tree, or branching trunk).
pub fn caterpillar_view(g: &ColoredGraph, color: usize) -> Result<CaterpillarView, ModelError> {
    let fail = |reason: &str| ModelError::NotACaterpillar {
        color,
        reason: reason.to_string(),
    };
    let edges = g.edges_of_color(color);
    if edges.is_empty() {
        return Err(fail("color class has no edges"));
    }

    // Collect the support and adjacency of this color class.
    let mut adj: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for &(u, v) in &edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let vertices: Vec<usize> = adj.keys().copied().collect();
    if edges.len() != vertices.len() - 1 {
        return Err(fail("edge count does not match a tree on its support"));
    }
    // Connectivity check (tree = connected + |E| = |V| - 1).
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![vertices[0]];
    seen.insert(vertices[0]);
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    if seen.len() != vertices.len() {
        return Err(fail("color class is disconnected"));
    }

    let deg = |v: usize| adj[&v].len();
    let non_leaf: Vec<usize> = vertices.iter().copied().filter(|&v| deg(v) >= 2).collect();

    // Single edge: empty backbone, spine = the edge itself.
    if non_leaf.is_empty() {
        let (u, v) = edges[0];
        return Ok(CaterpillarView {
            backbone: vec![],
            legs: vec![],
            spine: vec![u, v],
        });
    }

    // Star: one backbone vertex, all other edges are legs.
    if non_leaf.len() == 1 {
        let center = non_leaf[0];
        let mut leaves: Vec<usize> = adj[&center].clone();
        leaves.sort_unstable();
        let legs: Vec<(usize, usize)> = leaves.iter().map(|&l| (center, l)).collect();
        return Ok(CaterpillarView {
            backbone: vec![center],
            legs,
            spine: vec![leaves[0], center, leaves[1]],
        });
    }

    // General case: the non-leaf vertices must induce a path.
    let trunk_neighbors =
        |v: usize| -> Vec<usize> { adj[&v].iter().copied().filter(|&u| deg(u) >= 2).collect() };
    let mut trunk_ends = Vec::new();
    for &v in &non_leaf {
        match trunk_neighbors(v).len() {
            0 => return Err(fail("trunk is disconnected")),
            1 => trunk_ends.push(v),
            2 => {}
            _ => {
                return Err(fail(
                    "a non-leaf vertex has three or more non-leaf neighbors",
                ))
            }
        }
    }
    if trunk_ends.len() != 2 {
        return Err(fail("trunk is not a path"));
    }
    trunk_ends.sort_unstable();
    // Trace the trunk from its lower end.
    let mut backbone = vec![trunk_ends[0]];
    let mut prev = usize::MAX;
    while backbone.len() < non_leaf.len() {
        let cur = *backbone.last().unwrap();
        let nexts: Vec<usize> = trunk_neighbors(cur)
            .into_iter()
            .filter(|&x| x != prev)
            .collect();
        if nexts.len() != 1 {
            return Err(fail("trunk is not a path"));
        }
        prev = cur;
        backbone.push(nexts[0]);
    }
    if *backbone.last().unwrap() != trunk_ends[1] {
        return Err(fail("trunk is not a path"));
    }

    let mut legs = Vec::new();
    for &b in &backbone {
        for &u in &adj[&b] {
            if deg(u) == 1 {
                legs.push((b, u));
            }
        }
    }
    legs.sort_unstable();

    let end_leaf = |b: usize| -> Result<usize, ModelError> {
        adj[&b]
            .iter()
            .copied()
            .filter(|&u| deg(u) == 1)
            .min()
            .ok_or_else(|| fail("backbone end has no leaf"))
    };
    let first = end_leaf(backbone[0])?;
    let last = end_leaf(*backbone.last().unwrap())?;
    let mut spine = Vec::with_capacity(backbone.len() + 2);
    spine.push(first);
    spine.extend_from_slice(&backbone);
    spine.push(last);
    Ok(CaterpillarView {
        backbone,
        legs,
        spine,
    })
}

/// One vertex whose degree in a color class differs from the prescription.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMismatch {
    pub vertex: usize,
    pub expected: usize,
    pub actual: usize,
}

/// Verification result for one color class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorCheck {
    pub color: usize,
    pub caterpillar_ok: bool,
    pub caterpillar_error: Option<String>,
    pub degree_mismatches: Vec<DegreeMismatch>,
}

/// Full verification result of a graph against a degree matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub n_matches: bool,
    pub k_matches: bool,
    pub colors: Vec<ColorCheck>,
}

/// Check that `g` realizes `m`: same shape, every color class a caterpillar,
/// and every vertex has exactly the prescribed degree in every color.
/// Edge-disjointness is structural in `ColoredGraph`.
pub fn verify_realization(m: &DegreeMatrix, g: &ColoredGraph) -> VerifyReport {
    let n_matches = m.n() == g.n();
    let k_matches = m.k() == g.k();
    let mut colors = Vec::new();
    if n_matches && k_matches {
        for r in 0..m.k() {
            let color = r + 1;
            let (caterpillar_ok, caterpillar_error) = match caterpillar_view(g, color) {
                Ok(_) => (true, None),
                Err(e) => (false, Some(e.to_string())),
            };
            let degree_mismatches = (0..m.n())
                .filter_map(|v| {
                    let expected = m.entry(r, v);
                    let actual = g.degree(color, v);
                    (expected != actual).then_some(DegreeMismatch {
                        vertex: v,
                        expected,
                        actual,
                    })
                })
                .collect::<Vec<_>>();
            colors.push(ColorCheck {
                color,
                caterpillar_ok,
                caterpillar_error,
                degree_mismatches,
            });
        }
    }
    let ok = n_matches
        && k_matches
        && colors
            .iter()
            .all(|c| c.caterpillar_ok && c.degree_mismatches.is_empty());
    VerifyReport {
        ok,
        n_matches,
        k_matches,
        colors,
    }
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

/// Candidate canonical rows along with the row and column permutations
/// that produce them.
type CanonicalCandidate = (Vec<Vec<usize>>, Vec<usize>, Vec<usize>);

/// Canonical form of a degree matrix under simultaneous row and column
/// permutations: the lexicographically smallest matrix (row-major order)
/// over all row permutations, with columns sorted ascending as vectors for
/// each row order. Returns `(canonical, rho, gamma)` such that
/// `canonical[r][c] == m[rho[r]][gamma[c]]`.
pub fn canonical_form(m: &DegreeMatrix) -> (DegreeMatrix, Vec<usize>, Vec<usize>) {
    let k = m.k();
    let n = m.n();
    let mut best: Option<CanonicalCandidate> = None;
    for rho in permutations(k) {
        // Sort column indices by the column vector read in rho's row order.
        let col_key = |c: usize| -> Vec<usize> { rho.iter().map(|&r| m.entry(r, c)).collect() };
        let mut gamma: Vec<usize> = (0..n).collect();
        gamma.sort_by(|&a, &b| col_key(a).cmp(&col_key(b)).then(a.cmp(&b)));
        let candidate: Vec<Vec<usize>> = rho
            .iter()
            .map(|&r| gamma.iter().map(|&c| m.entry(r, c)).collect())
            .collect();
        let better = match &best {
            None => true,
            Some((cur, _, _)) => candidate < *cur,
        };
        if better {
            best = Some((candidate, rho.clone(), gamma));
        }
    }
    let (rows, rho, gamma) = best.expect("k >= 1");
    (
        DegreeMatrix::new(rows).expect("canonical shape"),
        rho,
        gamma,
    )
}

/// A step in a construction trace. Informational: shapes are stable for
/// serialization but carry no behavioral contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    /// Removed `column` (a leaf of `row`) and decremented `(row, target)`.
    Reduce {
        column: usize,
        row: usize,
        target: usize,
    },
    /// Base case handled by the path-packing construction.
    WaleckiBase { n: usize },
    /// Base case: a single caterpillar built directly from its degrees.
    SingleBase { n: usize },
    /// Base case found by exhaustive search (`nodes` = search nodes used).
    OracleBase { n: usize, nodes: u64 },
    /// Base case handled by a stored realization (1-based case number).
    FixtureBase { case: usize },
    /// Base case: two edge-disjoint Hamiltonian paths.
    PathPairBase { n: usize },
    /// Re-inserted `column`, its leg `(column, target)` in color `row + 1`,
    /// pulling the listed `(color, u, w)` edges onto the new vertex.
    Extend {
        column: usize,
        row: usize,
        target: usize,
        pulled: Vec<(usize, usize, usize)>,
    },
    /// Two-row construction step (case label plus the legs it attached,
    /// each `(color, new_vertex, target)`).
    TwoRow {
        case: String,
        legs: Vec<(usize, usize, usize)>,
    },
    /// Moved a leaf within one color to a spine end:
    /// `(backbone_from, leaf)` exchanged with `(backbone_to, other_leaf)`.
    LeafSwap {
        color: usize,
        from: (usize, usize),
        to: (usize, usize),
    },
    /// Dense-regime first phase: number of replayed reduction steps.
    PhaseOne { reductions: usize },
    /// Dense-regime second phase: one backbone completed.
    PhaseTwo { color: usize, backbone_len: usize },
}

/// Outcome of a realization attempt.
#[derive(Debug, Clone)]
pub enum Realization {
    /// A verified edge-disjoint caterpillar realization.
    Exists {
        graph: ColoredGraph,
        trace: Vec<TraceStep>,
    },
    /// Proven impossible, with the failed condition spelled out.
    NotExists { reason: String },
    /// Neither constructed nor refuted within this build's coverage.
    Unknown { reason: String },
}

impl Realization {
    pub fn exists(&self) -> bool {
        matches!(self, Realization::Exists { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[usize]]) -> DegreeMatrix {
        DegreeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn degree_matrix_shape_errors() {
        assert_eq!(DegreeMatrix::new(vec![]), Err(ModelError::EmptyMatrix));
        assert_eq!(
            DegreeMatrix::new(vec![vec![]]),
            Err(ModelError::EmptyMatrix)
        );
        assert_eq!(
            DegreeMatrix::new(vec![vec![1, 2], vec![1]]),
            Err(ModelError::RaggedRows)
        );
    }

    #[test]
    fn tree_and_path_predicates() {
        let d = m(&[&[1, 3, 2, 2, 1, 2, 2, 2, 1], &[2, 1, 2, 2, 2, 1, 2, 2, 2]]);
        assert!(d.is_tree_row(0));
        assert!(!d.is_path_row(0));
        assert!(d.is_path_row(1));
        // zero entry: not a tree row even with the right sum
        let z = m(&[&[0, 4, 2, 2, 1, 1]]);
        assert_eq!(z.row(0).iter().sum::<usize>(), 2 * 6 - 2);
        assert!(!z.is_tree_row(0));
        // (1,1) is the path on two vertices
        let p2 = m(&[&[1, 1]]);
        assert!(p2.is_path_row(0));
    }

    #[test]
    fn common_leaf_detection() {
        let d = m(&[&[1, 2, 2, 1], &[2, 1, 2, 1]]);
        assert_eq!(d.common_leaf_columns(), vec![3]);
        assert!(d.has_common_leaves());
        let e = m(&[&[1, 2, 2, 1], &[2, 1, 1, 2]]);
        assert!(!e.has_common_leaves());
    }

    #[test]
    fn validate_matrix_reports_predicates() {
        // Both rows sum to 16 on 9 vertices; row 0 has a 3 so it is a tree
        // row but not a path row.
        let d = m(&[&[1, 3, 2, 2, 1, 2, 2, 2, 1], &[2, 1, 2, 2, 2, 1, 2, 2, 2]]);
        let rep = validate_matrix(&d);
        assert!(rep.is_tree_matrix);
        assert!(!rep.all_rows_paths);
        assert!(rep.rows[0].is_tree && !rep.rows[0].is_path);
        assert!(rep.rows[1].is_path);
        assert_eq!(rep.rows[0].leaf_columns, vec![0, 4, 8]);
        assert!(!rep.has_common_leaves);
    }

    #[test]
    fn colored_graph_invariants() {
        let mut g = ColoredGraph::new(4, 2);
        g.add_edge(0, 1, 1).unwrap();
        assert_eq!(
            g.add_edge(1, 0, 2),
            Err(ModelError::PairAlreadyUsed(0, 1, 1))
        );
        assert_eq!(g.add_edge(0, 0, 1), Err(ModelError::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 4, 1), Err(ModelError::VertexOutOfRange(4, 4)));
        assert_eq!(g.add_edge(0, 2, 3), Err(ModelError::ColorOutOfRange(3, 2)));
        assert_eq!(g.color_of(0, 1), Some(1));
        assert_eq!(g.color_of(1, 0), Some(1));
        assert_eq!(g.degree(1, 0), 1);
        assert_eq!(g.remove_edge(0, 1), Ok(1));
        assert_eq!(g.remove_edge(0, 1), Err(ModelError::EdgeNotPresent(0, 1)));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edges_sorted_by_color_then_pair() {
        let mut g = ColoredGraph::new(4, 2);
        g.add_edge(2, 3, 2).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        assert_eq!(g.edges(), vec![(1, 0, 1), (1, 1, 2), (2, 2, 3)]);
    }

    #[test]
    fn caterpillar_view_single_edge_and_star() {
        let mut g = ColoredGraph::new(5, 1);
        g.add_edge(3, 1, 1).unwrap();
        let v = caterpillar_view(&g, 1).unwrap();
        assert_eq!(v.backbone, Vec::<usize>::new());
        assert_eq!(v.spine, vec![1, 3]);
        assert_eq!(v.spine_edges(), 1);

        let mut s = ColoredGraph::new(5, 1);
        for leaf in [0, 1, 3, 4] {
            s.add_edge(2, leaf, 1).unwrap();
        }
        let v = caterpillar_view(&s, 1).unwrap();
        assert_eq!(v.backbone, vec![2]);
        assert_eq!(v.spine, vec![0, 2, 1]);
        assert_eq!(v.legs, vec![(2, 0), (2, 1), (2, 3), (2, 4)]);
    }

    #[test]
    fn caterpillar_view_path_orientation() {
        // Path 4-2-0-3: backbone {0, 2} oriented 0 < 2, spine picks the ends.
        let mut g = ColoredGraph::new(5, 1);
        g.add_edge(4, 2, 1).unwrap();
        g.add_edge(2, 0, 1).unwrap();
        g.add_edge(0, 3, 1).unwrap();
        let v = caterpillar_view(&g, 1).unwrap();
        assert_eq!(v.backbone, vec![0, 2]);
        assert_eq!(v.spine, vec![3, 0, 2, 4]);
    }

    #[test]
    fn caterpillar_view_rejects_non_caterpillars() {
        // Spider: three paths of length 2 from a center => trunk branches.
        let mut g = ColoredGraph::new(7, 1);
        for (a, b) in [(0, 1), (1, 6), (0, 2), (2, 5), (0, 3), (3, 4)] {
            g.add_edge(a, b, 1).unwrap();
        }
        assert!(matches!(
            caterpillar_view(&g, 1),
            Err(ModelError::NotACaterpillar { .. })
        ));
        // Disconnected: two separate edges.
        let mut h = ColoredGraph::new(4, 1);
        h.add_edge(0, 1, 1).unwrap();
        h.add_edge(2, 3, 1).unwrap();
        assert!(matches!(
            caterpillar_view(&h, 1),
            Err(ModelError::NotACaterpillar { .. })
        ));
        // Cycle.
        let mut c = ColoredGraph::new(3, 1);
        c.add_edge(0, 1, 1).unwrap();
        c.add_edge(1, 2, 1).unwrap();
        c.add_edge(0, 2, 1).unwrap();
        assert!(matches!(
            caterpillar_view(&c, 1),
            Err(ModelError::NotACaterpillar { .. })
        ));
    }

    #[test]
    fn verify_realization_accepts_and_rejects() {
        // Two edge-disjoint Hamiltonian paths on 4 vertices.
        let d = m(&[&[1, 2, 1, 2], &[2, 1, 2, 1]]);
        let mut g = ColoredGraph::new(4, 2);
        // color 1: 0-1-3-2 ; color 2: 1-2-0-3
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 3, 1).unwrap();
        g.add_edge(3, 2, 1).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        g.add_edge(2, 0, 2).unwrap();
        g.add_edge(0, 3, 2).unwrap();
        let rep = verify_realization(&d, &g);
        assert!(rep.ok, "{rep:?}");

        // Wrong degree somewhere.
        let d_bad = m(&[&[2, 1, 1, 2], &[2, 1, 2, 1]]);
        let rep = verify_realization(&d_bad, &g);
        assert!(!rep.ok);
        assert!(!rep.colors[0].degree_mismatches.is_empty());
    }

    #[test]
    fn canonical_form_is_exact_minimum_and_consistent() {
        let d = m(&[&[2, 1, 2, 2, 1, 2], &[1, 2, 1, 3, 2, 2]]);
        let (canon, rho, gamma) = canonical_form(&d);
        for (r, &pr) in rho.iter().enumerate() {
            for (c, &pc) in gamma.iter().enumerate() {
                assert_eq!(canon.entry(r, c), d.entry(pr, pc));
            }
        }
        // Canonical form is invariant under any row/column relabeling.
        let row_order = [1usize, 0];
        let col_order = [3usize, 2, 0, 5, 1, 4];
        let permuted = DegreeMatrix::new(
            row_order
                .iter()
                .map(|&r| col_order.iter().map(|&c| d.entry(r, c)).collect())
                .collect(),
        )
        .unwrap();
        let (canon2, _, _) = canonical_form(&permuted);
        assert_eq!(canon, canon2);
        // Idempotent.
        let (canon3, _, _) = canonical_form(&canon);
        assert_eq!(canon, canon3);
        // Columns ascending lexicographically in the winning row order.
        for c in 1..canon.n() {
            let prev: Vec<usize> = (0..canon.k()).map(|r| canon.entry(r, c - 1)).collect();
            let cur: Vec<usize> = (0..canon.k()).map(|r| canon.entry(r, c)).collect();
            assert!(prev <= cur);
        }
    }

    #[test]
    fn permutations_are_lexicographic_and_complete() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }
}
