//! Decide and construct edge-disjoint caterpillar realizations of two tree
//! degree rows. Unlike the no-common-leaves engine, this handles matrices
//! in which both rows may have a 1 in the same column.
//!
//! A two-row matrix is realizable exactly when (1) both rows are tree
//! degree rows, (2) the column sums form a graphical sequence, and (3) the
//! largest column sum is at most `|S| + 4`, where `S` is the set of columns
//! whose minimum entry is 1.

use crate::engine::realize_k_le_4;
use crate::graphicality::erdos_gallai;
use crate::large_n::hamiltonian_path_with_forced;
use crate::model::{
    caterpillar_view, verify_realization, ColoredGraph, DegreeMatrix, Realization, TraceStep,
};
use crate::walecki::walecki_pack;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoTreeError {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("no pair of edge-disjoint Hamiltonian paths has these endpoints")]
    PathPairInfeasible,
    #[error("internal construction failure: {0}")]
    Internal(String),
}

fn internal<E: std::fmt::Display>(e: E) -> TwoTreeError {
    TwoTreeError::Internal(e.to_string())
}

/// Evaluation of the three realizability conditions for two rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTreeReport {
    /// Condition 1: both rows are tree degree rows.
    pub tree_rows: bool,
    /// Condition 2: the column sums are graphical.
    pub column_sums_graphical: bool,
    /// Condition 3: `d_max <= |S| + 4`.
    pub degree_bound_ok: bool,
    /// Largest column sum.
    pub d_max: usize,
    /// Number of columns whose minimum entry is 1.
    pub s_size: usize,
}

impl TwoTreeReport {
    pub fn realizable(&self) -> bool {
        self.tree_rows && self.column_sums_graphical && self.degree_bound_ok
    }

    /// First failing condition, phrased as a witness.
    pub fn failure_witness(&self) -> Option<String> {
        if !self.tree_rows {
            Some("condition 1: some row is not a tree degree row".to_string())
        } else if !self.column_sums_graphical {
            Some("condition 2: column sums are not a graphical degree sequence".to_string())
        } else if !self.degree_bound_ok {
            Some(format!(
                "condition 3: d_max={} > |S|+4={}",
                self.d_max,
                self.s_size + 4
            ))
        } else {
            None
        }
    }
}

/// Evaluate the three conditions on a two-row matrix.
pub fn check_two_tree_conditions(m: &DegreeMatrix) -> TwoTreeReport {
    let sums = m.column_sums();
    let d_max = sums.iter().copied().max().unwrap_or(0);
    let s_size = (0..m.n())
        .filter(|&c| (0..m.k()).map(|r| m.entry(r, c)).min().unwrap_or(0) == 1)
        .count();
    TwoTreeReport {
        tree_rows: m.k() == 2 && m.is_tree_matrix(),
        column_sums_graphical: erdos_gallai(&sums).graphical,
        degree_bound_ok: d_max <= s_size + 4,
        d_max,
        s_size,
    }
}

/// Two edge-disjoint Hamiltonian paths on `0..n`, the first with endpoint
/// set `{e1.0, e1.1}`, the second with `{e2.0, e2.1}`. The endpoint pairs
/// may share vertices. For disjoint pairs this is a direct packing; for
/// overlapping pairs an exhaustive search decides small `n`, while for
/// `n >= 9` the complement of the first path is dense enough that a path
/// between any two prescribed ends exists.
pub fn two_hamiltonian_paths(
    n: usize,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<(Vec<usize>, Vec<usize>), TwoTreeError> {
    for &(a, b) in [&e1, &e2] {
        if a >= n || b >= n {
            return Err(TwoTreeError::BadInput("endpoint out of range".to_string()));
        }
        if a == b {
            return Err(TwoTreeError::BadInput("equal endpoints".to_string()));
        }
    }
    let shared = [e1.0, e1.1]
        .iter()
        .filter(|v| **v == e2.0 || **v == e2.1)
        .count();
    if shared == 0 {
        // Distinct leaf columns: pack two paths directly.
        let mut rows = vec![vec![2; n]; 2];
        rows[0][e1.0] = 1;
        rows[0][e1.1] = 1;
        rows[1][e2.0] = 1;
        rows[1][e2.1] = 1;
        let m = DegreeMatrix::new(rows).map_err(internal)?;
        let g = walecki_pack(&m).map_err(internal)?;
        let p1 = caterpillar_view(&g, 1).map_err(internal)?.spine;
        let p2 = caterpillar_view(&g, 2).map_err(internal)?.spine;
        return Ok((p1, p2));
    }
    if n <= 8 {
        return joint_path_pair_search(n, e1, e2).ok_or(TwoTreeError::PathPairInfeasible);
    }
    // n >= 9: fix the first path, then find the second in its complement,
    // which has minimum degree n - 3 and is therefore joined between any
    // two prescribed endpoints.
    let mut p1 = Vec::with_capacity(n);
    p1.push(e1.0);
    p1.extend((0..n).filter(|&v| v != e1.0 && v != e1.1));
    p1.push(e1.1);
    let mut allowed = vec![vec![true; n]; n];
    for (i, row) in allowed.iter_mut().enumerate() {
        row[i] = false;
    }
    for w in p1.windows(2) {
        allowed[w[0]][w[1]] = false;
        allowed[w[1]][w[0]] = false;
    }
    let p2 = hamiltonian_path_with_forced(n, &allowed, e2, &[]).ok_or_else(|| {
        TwoTreeError::Internal("no second path found in a dense complement".to_string())
    })?;
    Ok((p1, p2))
}

/// Exhaustive search for two edge-disjoint Hamiltonian paths with the given
/// endpoint sets. Deterministic: vertices are tried in ascending order.
fn joint_path_pair_search(
    n: usize,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Option<(Vec<usize>, Vec<usize>)> {
    fn extend(
        n: usize,
        goal: usize,
        seq: &mut Vec<usize>,
        used: &mut Vec<bool>,
        banned: &dyn Fn(usize, usize) -> bool,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if seq.len() == n {
            return found(seq);
        }
        let head = *seq.last().unwrap();
        for v in 0..n {
            if used[v] || banned(head, v) {
                continue;
            }
            if v == goal && seq.len() != n - 1 {
                continue;
            }
            seq.push(v);
            used[v] = true;
            if extend(n, goal, seq, used, banned, found) {
                return true;
            }
            used[v] = false;
            seq.pop();
        }
        false
    }

    let mut result = None;
    let mut seq1 = vec![e1.0];
    let mut used1 = vec![false; n];
    used1[e1.0] = true;
    extend(n, e1.1, &mut seq1, &mut used1, &|_, _| false, &mut |p1| {
        let mut edge = vec![vec![false; n]; n];
        for w in p1.windows(2) {
            edge[w[0]][w[1]] = true;
            edge[w[1]][w[0]] = true;
        }
        let mut seq2 = vec![e2.0];
        let mut used2 = vec![false; n];
        used2[e2.0] = true;
        let banned = |u: usize, v: usize| edge[u][v];
        let mut inner = |p2: &[usize]| {
            result = Some((p1.to_vec(), p2.to_vec()));
            true
        };
        extend(n, e2.1, &mut seq2, &mut used2, &banned, &mut inner)
    });
    result
}

/// True when a tree degree row is a path row (all entries at most 2; the
/// row sum then forces exactly two 1s).
fn is_path(row: &[usize]) -> bool {
    row.iter().all(|&x| x <= 2)
}

/// Attach the pendant edge `(new_v, target)` in `color`. A target of degree
/// at least 2 is a backbone vertex, so the edge is a plain leg; a target of
/// degree 1 must first be moved to a spine end so that extending through it
/// keeps the color class a caterpillar.
fn attach_leg(
    g: &mut ColoredGraph,
    color: usize,
    new_v: usize,
    target: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<(), TwoTreeError> {
    if g.degree(color, target) < 2 {
        ensure_end_leaf(g, color, target, trace)?;
    }
    g.add_edge(new_v, target, color).map_err(internal)?;
    Ok(())
}

/// Make the degree-1 vertex `t` a leaf attached at a backbone end of its
/// color class, exchanging it with a leaf at an end if necessary. The
/// exchange preserves every vertex degree in every color; both replacement
/// pairs must be unused across all colors.
fn ensure_end_leaf(
    g: &mut ColoredGraph,
    color: usize,
    t: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<(), TwoTreeError> {
    let view = caterpillar_view(g, color).map_err(internal)?;
    if view.backbone.len() <= 1 {
        // A single edge or a star: any leaf can be extended through.
        return Ok(());
    }
    let ends = [view.backbone[0], *view.backbone.last().unwrap()];
    let b_t = view
        .legs
        .iter()
        .find(|&&(_, leaf)| leaf == t)
        .map(|&(b, _)| b)
        .ok_or_else(|| internal(format!("vertex {t} is not a leaf of color {color}")))?;
    if ends.contains(&b_t) {
        return Ok(());
    }
    for &b_e in &ends {
        for &(b, w) in &view.legs {
            if b != b_e || w == t {
                continue;
            }
            if g.pair_used(b_t, w) || g.pair_used(b_e, t) {
                continue;
            }
            g.remove_edge(b_t, t).map_err(internal)?;
            g.remove_edge(b_e, w).map_err(internal)?;
            g.add_edge(b_t, w, color).map_err(internal)?;
            g.add_edge(b_e, t, color).map_err(internal)?;
            trace.push(TraceStep::LeafSwap {
                color,
                from: (b_t, t),
                to: (b_e, w),
            });
            return Ok(());
        }
    }
    Err(TwoTreeError::Internal(format!(
        "no spine-end slot available for vertex {t} in color {color}"
    )))
}

/// Recursive constructor. Working matrices are pairs of rows over a subset
/// of the original columns; `ids` maps working columns to original vertex
/// labels and `colors` maps working rows to graph colors.
struct Worker {
    g: ColoredGraph,
    trace: Vec<TraceStep>,
}

impl Worker {
    fn solve(
        &mut self,
        rows: [Vec<usize>; 2],
        ids: Vec<usize>,
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let n_w = ids.len();
        // Sort columns: sum descending, then larger entry, then row 0's
        // entry, then row 1's. The sort is stable.
        let mut order: Vec<usize> = (0..n_w).collect();
        let key = |c: usize| {
            let d0 = rows[0][c];
            let d1 = rows[1][c];
            (d0 + d1, d0.max(d1), d0, d1)
        };
        order.sort_by_key(|&c| std::cmp::Reverse(key(c)));
        let w0: Vec<usize> = order.iter().map(|&c| rows[0][c]).collect();
        let w1: Vec<usize> = order.iter().map(|&c| rows[1][c]).collect();
        let ids: Vec<usize> = order.iter().map(|&c| ids[c]).collect();

        #[cfg(debug_assertions)]
        {
            let m = DegreeMatrix::new(vec![w0.clone(), w1.clone()]).unwrap();
            debug_assert!(
                check_two_tree_conditions(&m).realizable(),
                "working matrix lost the realizability conditions: {:?}",
                m.rows()
            );
        }

        let min_colsum = (0..n_w).map(|c| w0[c] + w1[c]).min().unwrap();
        if min_colsum >= 3 {
            return self.base_no_common(&w0, &w1, &ids, colors);
        }
        let p0 = is_path(&w0);
        let p1 = is_path(&w1);
        if p0 && p1 {
            return self.base_both_paths(&w0, &w1, &ids, colors);
        }
        if p0 != p1 {
            if p0 {
                // Normalize so the path row is second.
                return self.solve([w1, w0], ids, [colors[1], colors[0]]);
            }
            return self.case_one_path(&w0, &w1, &ids, colors);
        }
        if let Some((x0, x1)) = big_pair(&w0, &w1) {
            return self.case_two_big(&w0, &w1, &ids, colors, x0, x1);
        }
        self.case_single_big(&w0, &w1, &ids, colors)
    }

    /// Every column sum is at least 3, so no column has two 1s: hand off to
    /// the no-common-leaves engine and relabel its output.
    fn base_no_common(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let m = DegreeMatrix::new(vec![w0.to_vec(), w1.to_vec()]).map_err(internal)?;
        let (g_loc, _) = realize_k_le_4(&m).map_err(internal)?;
        for (c, u, v) in g_loc.edges() {
            self.g
                .add_edge(ids[u], ids[v], colors[c - 1])
                .map_err(internal)?;
        }
        self.trace.push(TraceStep::TwoRow {
            case: "no-common-leaves".to_string(),
            legs: vec![],
        });
        Ok(())
    }

    /// Both rows are paths: two Hamiltonian paths with the prescribed
    /// endpoint columns.
    fn base_both_paths(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let ends = |w: &[usize]| -> Vec<usize> { (0..w.len()).filter(|&c| w[c] == 1).collect() };
        let (a, b) = {
            let e = ends(w0);
            (e[0], e[1])
        };
        let (c, d) = {
            let e = ends(w1);
            (e[0], e[1])
        };
        let n_w = ids.len();
        let (p1, p2) = two_hamiltonian_paths(n_w, (a, b), (c, d))?;
        for w in p1.windows(2) {
            self.g
                .add_edge(ids[w[0]], ids[w[1]], colors[0])
                .map_err(internal)?;
        }
        for w in p2.windows(2) {
            self.g
                .add_edge(ids[w[0]], ids[w[1]], colors[1])
                .map_err(internal)?;
        }
        self.trace.push(TraceStep::TwoRow {
            case: "two-paths".to_string(),
            legs: vec![],
        });
        self.trace.push(TraceStep::PathPairBase { n: n_w });
        Ok(())
    }

    /// Exactly one path row (normalized to row 1). Delete the last column
    /// (a (1,1) column), decrement one entry per row among the first two
    /// columns, realize, and attach the deleted vertex by one leg per color.
    fn case_one_path(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let n_w = ids.len();
        let last = n_w - 1;
        if w0[last] != 1 || w1[last] != 1 {
            return Err(internal("expected a (1,1) column in last position"));
        }
        // If the path row has a 1 in column 1, its other 1 is the last
        // column, so its entry in column 0 is 2 and can take the path
        // extension; row 0 then gives back a unit in column 1. Otherwise
        // column 0 holds row 0's entry above 2 and column 1 holds a 2 of
        // the path row.
        let (x0, x1) = if w1[1] == 1 { (1, 0) } else { (0, 1) };
        if w0[x0] < 2 || w1[x1] < 2 {
            return Err(internal("unexpected entries in the first two columns"));
        }
        let mut r0 = w0[..last].to_vec();
        let mut r1 = w1[..last].to_vec();
        r0[x0] -= 1;
        r1[x1] -= 1;
        let v = ids[last];
        let (t0, t1) = (ids[x0], ids[x1]);
        self.solve([r0, r1], ids[..last].to_vec(), colors)?;
        attach_leg(&mut self.g, colors[0], v, t0, &mut self.trace)?;
        attach_leg(&mut self.g, colors[1], v, t1, &mut self.trace)?;
        self.trace.push(TraceStep::TwoRow {
            case: "one-path".to_string(),
            legs: vec![(colors[0], v, t0), (colors[1], v, t1)],
        });
        Ok(())
    }

    /// Both rows non-path with entries above 2 in distinct columns: delete
    /// the last column, decrement those two entries, realize, re-attach.
    /// Both targets keep degree at least 2, so the legs are plain.
    fn case_two_big(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
        x0: usize,
        x1: usize,
    ) -> Result<(), TwoTreeError> {
        let n_w = ids.len();
        let last = n_w - 1;
        if w0[last] != 1 || w1[last] != 1 {
            return Err(internal("expected a (1,1) column in last position"));
        }
        let mut r0 = w0[..last].to_vec();
        let mut r1 = w1[..last].to_vec();
        r0[x0] -= 1;
        r1[x1] -= 1;
        let v = ids[last];
        let (t0, t1) = (ids[x0], ids[x1]);
        self.solve([r0, r1], ids[..last].to_vec(), colors)?;
        attach_leg(&mut self.g, colors[0], v, t0, &mut self.trace)?;
        attach_leg(&mut self.g, colors[1], v, t1, &mut self.trace)?;
        self.trace.push(TraceStep::TwoRow {
            case: "two-big-columns".to_string(),
            legs: vec![(colors[0], v, t0), (colors[1], v, t1)],
        });
        Ok(())
    }

    /// Both rows non-path, all entries above 2 confined to column 0 (`z`).
    /// While a (1,2) or (2,1) column remains, peel one: delete it and give
    /// back one unit of z's entry in the row where the column had a 1. The
    /// peeled vertex re-attaches with a plain leg to z in that row (z keeps
    /// an entry of at least 2 there) and by subdividing a spine edge that
    /// avoids z in the other color, which extends that caterpillar without
    /// touching any used pair. Once only (1,1) and (2,2) columns are left,
    /// both entries at z equal the number of common-leaf columns and an
    /// explicit two-caterpillar layout finishes.
    fn case_single_big(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let n_w = ids.len();
        if w0[0] <= 2 || w1[0] <= 2 {
            return Err(internal("expected entries above 2 in column 0"));
        }
        let mut mixed: Option<(usize, usize)> = None; // (column, row of the 1)
        for c in 1..n_w {
            match (w0[c], w1[c]) {
                (1, 2) => {
                    mixed = Some((c, 0));
                    break;
                }
                (2, 1) => {
                    if mixed.is_none() {
                        mixed = Some((c, 1));
                    }
                }
                (2, 2) | (1, 1) => {}
                other => {
                    return Err(internal(format!(
                        "unexpected column {other:?} outside column 0"
                    )))
                }
            }
        }
        if let Some((col, leaf_row)) = mixed {
            return self.peel_mixed_column(w0, w1, ids, colors, col, leaf_row);
        }
        self.single_big_core(w0, w1, ids, colors)
    }

    /// Peel the mixed column `col` (a 1 in `leaf_row`, a 2 in the other
    /// row), realize the rest, and re-attach the vertex.
    fn peel_mixed_column(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
        col: usize,
        leaf_row: usize,
    ) -> Result<(), TwoTreeError> {
        let mut r0 = w0.to_vec();
        let mut r1 = w1.to_vec();
        r0.remove(col);
        r1.remove(col);
        if leaf_row == 0 {
            r0[0] -= 1;
        } else {
            r1[0] -= 1;
        }
        let v = ids[col];
        let z = ids[0];
        let mut rest = ids.to_vec();
        rest.remove(col);
        self.solve([r0, r1], rest, colors)?;

        // Degree 2 in the other color: subdivide a spine edge avoiding z.
        let other_color = colors[1 - leaf_row];
        let view = caterpillar_view(&self.g, other_color).map_err(internal)?;
        let (u, w) = view
            .spine_edge_list()
            .into_iter()
            .find(|&(u, w)| u != z && w != z)
            .ok_or_else(|| internal("no spine edge avoiding the big column"))?;
        self.g.remove_edge(u, w).map_err(internal)?;
        self.g.add_edge(u, v, other_color).map_err(internal)?;
        self.g.add_edge(v, w, other_color).map_err(internal)?;

        // Degree 1 in the leaf row: a plain leg to z, whose entry there is
        // still at least 2.
        attach_leg(&mut self.g, colors[leaf_row], v, z, &mut self.trace)?;
        self.trace.push(TraceStep::Extend {
            column: v,
            row: leaf_row,
            target: z,
            pulled: vec![(other_color, u, w)],
        });
        Ok(())
    }

    /// Residual core: column 0 is `(g, g)` where `g` is the number of
    /// (1,1) columns (3 or 4, by the realizability conditions), and every
    /// other column is (1,1) or (2,2), with at least `g` of the latter.
    /// Color 1 chains z and the (2,2) columns with two common leaves at z
    /// and the rest extending the chain ends. Color 2 re-chains the same
    /// vertices stepping by two positions, which never repeats a color-1
    /// pair, hangs the first two common leaves at its own chain ends, and
    /// the rest at z.
    fn single_big_core(
        &mut self,
        w0: &[usize],
        w1: &[usize],
        ids: &[usize],
        colors: [usize; 2],
    ) -> Result<(), TwoTreeError> {
        let n_w = ids.len();
        let z = ids[0];
        let mut cs = Vec::new();
        let mut es = Vec::new();
        for c in 1..n_w {
            if w0[c] == 1 {
                cs.push(ids[c]);
            } else {
                es.push(ids[c]);
            }
        }
        let gamma = cs.len();
        let eps = es.len();
        if w0[0] != gamma || w1[0] != gamma || !(3..=4).contains(&gamma) || eps < gamma {
            return Err(internal(format!(
                "unexpected core shape: column 0 is ({}, {}) with {} common-leaf and {} (2,2) columns",
                w0[0], w1[0], gamma, eps
            )));
        }

        // Color 1: backbone z-e1-...-e_eps for gamma = 3 (z takes cs[0],
        // cs[1] and the far end takes cs[2]); for gamma = 4, z sits between
        // e1 and e2 and the two chain ends take cs[2] and cs[3].
        let c1 = colors[0];
        let last = *es.last().unwrap();
        if gamma == 3 {
            self.g.add_edge(z, es[0], c1).map_err(internal)?;
            for w in es.windows(2) {
                self.g.add_edge(w[0], w[1], c1).map_err(internal)?;
            }
            self.g.add_edge(last, cs[2], c1).map_err(internal)?;
        } else {
            self.g.add_edge(es[0], z, c1).map_err(internal)?;
            self.g.add_edge(z, es[1], c1).map_err(internal)?;
            for w in es[1..].windows(2) {
                self.g.add_edge(w[0], w[1], c1).map_err(internal)?;
            }
            self.g.add_edge(es[0], cs[2], c1).map_err(internal)?;
            self.g.add_edge(last, cs[3], c1).map_err(internal)?;
        }
        self.g.add_edge(z, cs[0], c1).map_err(internal)?;
        self.g.add_edge(z, cs[1], c1).map_err(internal)?;

        // Color 2 backbone: every second e ascending, then z, then the
        // remaining e's descending, ending at e1. Consecutive entries are
        // two chain positions apart, and z's neighbors are e's that color 1
        // never puts next to z.
        let c2 = colors[1];
        let mut back2: Vec<usize> = Vec::with_capacity(eps + 1);
        for i in (1..eps).step_by(2) {
            back2.push(es[i]);
        }
        back2.push(z);
        let mut down: Vec<usize> = (2..eps).step_by(2).map(|i| es[i]).collect();
        down.reverse();
        back2.extend(down);
        back2.push(es[0]);
        for w in back2.windows(2) {
            self.g.add_edge(w[0], w[1], c2).map_err(internal)?;
        }
        self.g.add_edge(back2[0], cs[0], c2).map_err(internal)?;
        self.g.add_edge(es[0], cs[1], c2).map_err(internal)?;
        for &leaf in &cs[2..] {
            self.g.add_edge(z, leaf, c2).map_err(internal)?;
        }

        let mut legs = vec![
            (c1, cs[0], z),
            (c1, cs[1], z),
            (c2, cs[0], back2[0]),
            (c2, cs[1], es[0]),
        ];
        if gamma == 3 {
            legs.push((c1, cs[2], last));
            legs.push((c2, cs[2], z));
        } else {
            legs.push((c1, cs[2], es[0]));
            legs.push((c1, cs[3], last));
            legs.push((c2, cs[2], z));
            legs.push((c2, cs[3], z));
        }
        self.trace.push(TraceStep::TwoRow {
            case: "single-big-core".to_string(),
            legs,
        });
        Ok(())
    }
}

/// Two entries above 2 in distinct columns, if any, preferring columns 0
/// and 1. Column 0 always carries an entry above 2 when one exists, so the
/// remaining shapes only need a scan of the other row.
fn big_pair(w0: &[usize], w1: &[usize]) -> Option<(usize, usize)> {
    let n = w0.len();
    if n >= 2 && w0[0] > 2 && w1[1] > 2 {
        return Some((0, 1));
    }
    if n >= 2 && w0[1] > 2 && w1[0] > 2 {
        return Some((1, 0));
    }
    if w0[0] > 2 {
        if let Some(j) = (1..n).find(|&j| w1[j] > 2) {
            return Some((0, j));
        }
    }
    if w1[0] > 2 {
        if let Some(j) = (1..n).find(|&j| w0[j] > 2) {
            return Some((j, 0));
        }
    }
    None
}

fn run_worker(m: &DegreeMatrix) -> Result<(ColoredGraph, Vec<TraceStep>), TwoTreeError> {
    let mut worker = Worker {
        g: ColoredGraph::new(m.n(), 2),
        trace: Vec::new(),
    };
    worker.solve(
        [m.row(0).to_vec(), m.row(1).to_vec()],
        (0..m.n()).collect(),
        [1, 2],
    )?;
    Ok((worker.g, worker.trace))
}

/// Decide and, when possible, construct a realization of a two-row matrix.
/// The three conditions are decisive: failing any of them is a proof of
/// non-existence, and the construction succeeds whenever they all hold
/// (with a rows-swapped retry as a fallback ordering).
pub fn realize_two(m: &DegreeMatrix) -> Realization {
    if m.k() != 2 {
        return Realization::Unknown {
            reason: format!("two-row construction requires k = 2, got k = {}", m.k()),
        };
    }
    let report = check_two_tree_conditions(m);
    if let Some(reason) = report.failure_witness() {
        return Realization::NotExists { reason };
    }
    match run_worker(m) {
        Ok((graph, trace)) => {
            debug_assert!(verify_realization(m, &graph).ok);
            Realization::Exists { graph, trace }
        }
        Err(first) => {
            // Retry with the rows swapped: the column order and all row-
            // sensitive choices change, which can unblock leg placement.
            let swapped = DegreeMatrix::new(vec![m.row(1).to_vec(), m.row(0).to_vec()]).unwrap();
            match run_worker(&swapped) {
                Ok((gs, ts)) => {
                    let mut graph = ColoredGraph::new(m.n(), 2);
                    for (c, u, v) in gs.edges() {
                        graph
                            .add_edge(u, v, 3 - c)
                            .expect("color swap preserves edge-disjointness");
                    }
                    let mut trace = vec![TraceStep::TwoRow {
                        case: "rows-swapped".to_string(),
                        legs: vec![],
                    }];
                    trace.extend(ts.into_iter().map(swap_trace_colors));
                    debug_assert!(verify_realization(m, &graph).ok);
                    Realization::Exists { graph, trace }
                }
                Err(second) => Realization::Unknown {
                    reason: format!("construction failed: {first}; with rows swapped: {second}"),
                },
            }
        }
    }
}

/// Rewrite colors 1 and 2 in a trace recorded on a rows-swapped matrix.
fn swap_trace_colors(step: TraceStep) -> TraceStep {
    let sw = |c: usize| 3 - c;
    match step {
        TraceStep::TwoRow { case, legs } => TraceStep::TwoRow {
            case,
            legs: legs.into_iter().map(|(c, a, b)| (sw(c), a, b)).collect(),
        },
        TraceStep::LeafSwap { color, from, to } => TraceStep::LeafSwap {
            color: sw(color),
            from,
            to,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(rows: Vec<Vec<usize>>) -> DegreeMatrix {
        DegreeMatrix::new(rows).unwrap()
    }

    fn assert_exists(m: &DegreeMatrix) -> ColoredGraph {
        match realize_two(m) {
            Realization::Exists { graph, .. } => {
                let rep = verify_realization(m, &graph);
                assert!(rep.ok, "invalid realization of {:?}: {rep:?}", m.rows());
                graph
            }
            other => panic!("expected a realization of {:?}, got {other:?}", m.rows()),
        }
    }

    #[test]
    fn conditions_catch_each_failure() {
        // Condition 1.
        let r = check_two_tree_conditions(&dm(vec![vec![1, 2, 2, 2], vec![2, 1, 1, 2]]));
        assert!(!r.tree_rows);
        assert!(r.failure_witness().unwrap().contains("condition 1"));
        // Condition 2: two stars on the same center need parallel edges.
        let r = check_two_tree_conditions(&dm(vec![vec![3, 1, 1, 1], vec![3, 1, 1, 1]]));
        assert!(r.tree_rows);
        assert!(!r.column_sums_graphical);
        assert!(r.failure_witness().unwrap().contains("condition 2"));
        // Condition 3, including the exact witness text.
        let row = vec![5, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1];
        let r = check_two_tree_conditions(&dm(vec![row.clone(), row]));
        assert!(r.tree_rows);
        assert!(r.column_sums_graphical);
        assert!(!r.degree_bound_ok);
        assert_eq!(
            r.failure_witness().unwrap(),
            "condition 3: d_max=10 > |S|+4=9"
        );
    }

    #[test]
    fn two_disjoint_paths_realize() {
        assert_exists(&dm(vec![vec![1, 2, 2, 1], vec![2, 1, 1, 2]]));
        assert_exists(&dm(vec![vec![1, 2, 2, 2, 2, 1], vec![2, 2, 1, 1, 2, 2]]));
    }

    #[test]
    fn paths_sharing_one_endpoint_realize() {
        // Row 0 ends {0,4}, row 1 ends {0,3}.
        assert_exists(&dm(vec![vec![1, 2, 2, 2, 1], vec![1, 2, 2, 1, 2]]));
    }

    #[test]
    fn paths_sharing_both_endpoints_on_five_vertices_do_not_exist() {
        // Degrees (2,4,4,4,2) would force the union to miss only edges at
        // the shared ends, which is impossible.
        let m = dm(vec![vec![1, 2, 2, 2, 1], vec![1, 2, 2, 2, 1]]);
        let r = check_two_tree_conditions(&m);
        assert!(!r.column_sums_graphical);
        assert!(matches!(realize_two(&m), Realization::NotExists { .. }));
    }

    #[test]
    fn paths_sharing_both_endpoints_on_six_vertices_realize() {
        assert_exists(&dm(vec![vec![1, 2, 2, 2, 2, 1], vec![1, 2, 2, 2, 2, 1]]));
    }

    #[test]
    fn large_overlapping_path_pairs_use_the_dense_complement() {
        // n = 12 exercises the non-exhaustive branch.
        let mut r0 = vec![2; 12];
        r0[0] = 1;
        r0[11] = 1;
        let mut r1 = vec![2; 12];
        r1[0] = 1;
        r1[11] = 1;
        assert_exists(&dm(vec![r0, r1]));
    }

    #[test]
    fn one_path_row_with_a_common_leaf_realizes() {
        assert_exists(&dm(vec![
            vec![3, 2, 2, 2, 1, 1, 1],
            vec![2, 2, 1, 2, 1, 2, 2],
        ]));
    }

    #[test]
    fn single_big_column_case_realizes() {
        // Both rows (3,2,2,2,1,1,1): z = (3,3), three common-leaf columns,
        // three (2,2) columns.
        let row = vec![3, 2, 2, 2, 1, 1, 1];
        assert_exists(&dm(vec![row.clone(), row]));
    }

    #[test]
    fn two_big_columns_case_realizes() {
        // Entries above 2 in different columns plus two common leaves.
        assert_exists(&dm(vec![
            vec![3, 2, 2, 2, 2, 1, 1, 1],
            vec![2, 3, 2, 2, 1, 2, 1, 1],
        ]));
    }

    #[test]
    fn berczi_matrix_is_rejected() {
        let row = vec![5, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1];
        let m = dm(vec![row.clone(), row]);
        match realize_two(&m) {
            Realization::NotExists { reason } => {
                assert_eq!(reason, "condition 3: d_max=10 > |S|+4=9");
            }
            other => panic!("expected non-existence, got {other:?}"),
        }
    }

    #[test]
    fn path_pair_helper_validates_input() {
        assert!(matches!(
            two_hamiltonian_paths(5, (0, 0), (1, 2)),
            Err(TwoTreeError::BadInput(_))
        ));
        assert!(matches!(
            two_hamiltonian_paths(5, (0, 7), (1, 2)),
            Err(TwoTreeError::BadInput(_))
        ));
    }

    #[test]
    fn path_pair_reports_infeasible_small_cases() {
        // Shared endpoints on 4 vertices: the union would need odd degrees
        // at interior vertices.
        assert_eq!(
            two_hamiltonian_paths(4, (0, 3), (0, 3)),
            Err(TwoTreeError::PathPairInfeasible)
        );
    }

    #[test]
    fn single_big_core_lays_out_both_caterpillars() {
        // Column 0 carries (3, 3), three common-leaf columns, three (2,2)
        // columns: the smallest core shape, hit directly with no peeling.
        let m =
            DegreeMatrix::new(vec![vec![3, 1, 1, 1, 2, 2, 2], vec![3, 1, 1, 1, 2, 2, 2]]).unwrap();
        assert_exists(&m);
    }

    #[test]
    fn mixed_columns_peel_down_to_the_core() {
        // Column 0 carries (4, 5); one (1,2) column and two (2,1) columns
        // peel off before the core with gamma = 3 is reached.
        let m = DegreeMatrix::new(vec![
            vec![4, 2, 2, 1, 1, 1, 1, 2, 2, 2],
            vec![5, 1, 1, 2, 1, 1, 1, 2, 2, 2],
        ])
        .unwrap();
        assert_exists(&m);
    }
}
