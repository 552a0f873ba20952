//! Unconditional construction for five or more rows on a large vertex set.
//!
//! For a tree degree matrix without common leaves, with `k >= 5` rows and
//! `n >= max(22k - 11, 396)` columns, a realization always exists and is
//! built in two phases:
//!
//! * **Phase one** reduces the matrix to an all-path matrix by repeatedly
//!   deleting a column of sum `2k - 1` whose single 1 lies in a non-path
//!   row, packs the reduced matrix as edge-disjoint Hamiltonian paths, and
//!   replays the deletions. The three colors with the most leaves
//!   ("maintained" colors) are kept as complete caterpillars throughout the
//!   replay; every other color only records its two end legs and the edges
//!   at the densest vertex, leaving its backbone interior open.
//! * **Phase two** completes each remaining color by routing a Hamiltonian
//!   path through its backbone inside the complement of the edges placed so
//!   far, forcing the prescribed end vertices, the edges already placed at
//!   the densest vertex, and anchor edges reserved for dense vertices.
//!
//! The degree census (at most one vertex of column sum `>= 2n/3`, at most
//! eleven of column sum `>= n/6`) is what makes the complement dense enough
//! for the path-routing rotations to succeed.

use crate::model::{
    caterpillar_view, verify_realization, ColoredGraph, DegreeMatrix, ModelError, Realization,
    TraceStep,
};
use crate::rainbow::{find_rainbow_avoiding, RainbowError};
use crate::walecki::{walecki_pack, WaleckiError};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LargeNError {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("degree census violated: {0}")]
    CensusViolation(String),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Walecki(#[from] WaleckiError),
    #[error("internal construction failure: {0}")]
    Internal(String),
}

fn internal<E: std::fmt::Display>(e: E) -> LargeNError {
    LargeNError::Internal(e.to_string())
}

/// Classification of columns by their sums, relative to the thresholds the
/// dense construction relies on: `heavy` columns have sum at least `2n/3`
/// and `medium` columns (a superset) have sum at least `n/6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub column_sums: Vec<usize>,
    pub heavy: Vec<usize>,
    pub medium: Vec<usize>,
}

/// Count heavy and medium columns and enforce the bounds that hold for
/// every tree degree matrix without common leaves once `n >= 22k - 11`:
/// at most one heavy column and at most eleven medium columns.
pub fn census(m: &DegreeMatrix) -> Result<CensusReport, LargeNError> {
    let n = m.n();
    let k = m.k();
    if !m.is_tree_matrix() {
        return Err(LargeNError::BadInput(
            "some row is not a tree degree row".into(),
        ));
    }
    if m.has_common_leaves() {
        return Err(LargeNError::BadInput(
            "the census bounds require no common leaves".into(),
        ));
    }
    if n < 22 * k - 11 {
        return Err(LargeNError::BadInput(format!(
            "the census bounds require n >= 22k - 11 = {}, got n = {}",
            22 * k - 11,
            n
        )));
    }
    let column_sums = m.column_sums();
    let heavy: Vec<usize> = (0..n).filter(|&c| 3 * column_sums[c] >= 2 * n).collect();
    let medium: Vec<usize> = (0..n).filter(|&c| 6 * column_sums[c] >= n).collect();
    if heavy.len() > 1 {
        return Err(LargeNError::CensusViolation(format!(
            "{} columns have sum at least 2n/3; at most one is possible",
            heavy.len()
        )));
    }
    if medium.len() > 11 {
        return Err(LargeNError::CensusViolation(format!(
            "{} columns have sum at least n/6; at most eleven are possible",
            medium.len()
        )));
    }
    Ok(CensusReport {
        column_sums,
        heavy,
        medium,
    })
}

/// Find a Hamiltonian path of the graph given by `allowed`, from `ends.0`
/// to `ends.1`, that uses every edge in `forced` (forced edges are usable
/// even where `allowed` says otherwise). Returns the vertex sequence.
///
/// The forced edges must form vertex-disjoint simple paths ("blocks") in
/// which neither endpoint is interior. The search lays the blocks out in a
/// fixed order and repairs disallowed adjacencies by reversing segments:
/// a reversal at positions `i < q` replaces the pairs at slots `i` and `q`
/// by `(seq[i], seq[q])` and `(seq[i+1], seq[q+1])`, so it is applied only
/// when both new pairs are usable and the destroyed slot `q` is not a
/// forced pair. Each repair strictly decreases the number of disallowed
/// adjacencies, so the loop ends after at most `n` rounds. In graphs dense
/// enough that every disallowed adjacency has such a repair partner (the
/// only way this routine is reached in the dense construction), this always
/// succeeds; for tiny inputs an exhaustive search backstops the rotation.
pub fn hamiltonian_path_with_forced(
    n: usize,
    allowed: &[Vec<bool>],
    ends: (usize, usize),
    forced: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let (a, b) = ends;
    if n < 2 || a >= n || b >= n || a == b || allowed.len() != n {
        return None;
    }
    let mut fpair = vec![vec![false; n]; n];
    let mut fadj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in forced {
        if u >= n || v >= n || u == v {
            return None;
        }
        if fpair[u][v] {
            continue;
        }
        fpair[u][v] = true;
        fpair[v][u] = true;
        fadj[u].push(v);
        fadj[v].push(u);
    }
    if fadj.iter().any(|l| l.len() > 2) {
        return None;
    }
    if fadj[a].len() > 1 || fadj[b].len() > 1 {
        return None;
    }

    // Assemble the forced blocks: maximal paths of forced edges, plus
    // singletons. A forced cycle makes the instance infeasible.
    let mut seen = vec![false; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if seen[s] || fadj[s].len() != 1 {
            continue;
        }
        let mut blk = vec![s];
        seen[s] = true;
        let mut prev = s;
        let mut cur = fadj[s][0];
        loop {
            blk.push(cur);
            seen[cur] = true;
            let next = fadj[cur].iter().copied().find(|&x| x != prev);
            match next {
                Some(x) => {
                    prev = cur;
                    cur = x;
                }
                None => break,
            }
        }
        blocks.push(blk);
    }
    for s in 0..n {
        if !seen[s] && fadj[s].is_empty() {
            seen[s] = true;
            blocks.push(vec![s]);
        }
    }
    if seen.iter().any(|&x| !x) {
        return None; // a forced cycle
    }

    let pos_a = blocks.iter().position(|blk| blk.contains(&a))?;
    let pos_b = blocks.iter().position(|blk| blk.contains(&b))?;
    if pos_a == pos_b {
        // Both prescribed ends in one block: only the degenerate case where
        // the block is the whole path can work.
        let mut blk = blocks.swap_remove(pos_a);
        if blk.len() != n {
            return None;
        }
        if blk[0] == b {
            blk.reverse();
        }
        if blk[0] == a && blk[n - 1] == b {
            return Some(blk);
        }
        return None;
    }

    // Lay the blocks out: the block holding `a` first (with `a` leading),
    // the block holding `b` last (with `b` trailing), the rest in between
    // sorted by smallest vertex, lower end first, for determinism.
    let mut a_blk = blocks[pos_a].clone();
    let mut b_blk = blocks[pos_b].clone();
    let mut middles: Vec<Vec<usize>> = blocks
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != pos_a && i != pos_b)
        .map(|(_, blk)| blk)
        .collect();
    if a_blk[0] != a {
        a_blk.reverse();
    }
    if a_blk[0] != a {
        return None; // `a` interior to a block
    }
    if b_blk[b_blk.len() - 1] != b {
        b_blk.reverse();
    }
    if b_blk[b_blk.len() - 1] != b {
        return None;
    }
    for blk in middles.iter_mut() {
        if blk[0] > blk[blk.len() - 1] {
            blk.reverse();
        }
    }
    middles.sort_by_key(|blk| blk[0]);
    let mut seq: Vec<usize> = a_blk;
    for blk in middles {
        seq.extend(blk);
    }
    seq.extend(b_blk);
    debug_assert_eq!(seq.len(), n);

    let is_ok = |u: usize, v: usize| fpair[u][v] || allowed[u][v];

    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > 4 * n + 16 {
            break; // should be unreachable; fall through to the backstop
        }
        let bad = (0..n - 1).find(|&i| !is_ok(seq[i], seq[i + 1]));
        let Some(i) = bad else {
            return Some(seq);
        };
        let (u1, u2) = (seq[i], seq[i + 1]);
        let mut repaired = false;
        for q in 0..n - 1 {
            if q.abs_diff(i) < 2 {
                continue; // overlapping slots reverse a singleton: no-op
            }
            let (w1, w2) = (seq[q], seq[q + 1]);
            if fpair[w1][w2] {
                continue; // never break a forced pair
            }
            if !(is_ok(u1, w1) && is_ok(u2, w2)) {
                continue;
            }
            if q > i {
                seq[i + 1..=q].reverse();
            } else {
                seq[q + 1..=i].reverse();
            }
            repaired = true;
            break;
        }
        if !repaired {
            break;
        }
    }
    if n <= 12 {
        exhaustive_forced_path(n, allowed, &fpair, &fadj, a, b)
    } else {
        None
    }
}

/// Exhaustive backstop for tiny instances of the forced-path problem.
fn exhaustive_forced_path(
    n: usize,
    allowed: &[Vec<bool>],
    fpair: &[Vec<bool>],
    fadj: &[Vec<usize>],
    a: usize,
    b: usize,
) -> Option<Vec<usize>> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        seq: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        nodes: &mut u64,
        n: usize,
        allowed: &[Vec<bool>],
        fpair: &[Vec<bool>],
        fadj: &[Vec<usize>],
        b: usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > 200_000 {
            return false;
        }
        let cur = *seq.last().unwrap();
        if seq.len() == n {
            return cur == b;
        }
        let prev = if seq.len() >= 2 {
            Some(seq[seq.len() - 2])
        } else {
            None
        };
        // Forced edges at the current vertex other than the one just used
        // must be the next step.
        let pending: Vec<usize> = fadj[cur]
            .iter()
            .copied()
            .filter(|&x| Some(x) != prev)
            .collect();
        let candidates: Vec<usize> = if pending.len() > 1 {
            return false;
        } else if let Some(&forced_next) = pending.first() {
            if visited[forced_next] {
                return false;
            }
            vec![forced_next]
        } else {
            (0..n)
                .filter(|&v| !visited[v] && (allowed[cur][v] || fpair[cur][v]))
                .collect()
        };
        for v in candidates {
            if v == b && seq.len() != n - 1 {
                continue;
            }
            // Entering an interior vertex of a forced block from outside it
            // can never complete that block.
            if fadj[v].len() == 2 && !fpair[cur][v] {
                continue;
            }
            if fadj[v].len() == 1 && !fpair[cur][v] && visited[fadj[v][0]] {
                continue; // its forced edge can no longer be used
            }
            visited[v] = true;
            seq.push(v);
            if extend(seq, visited, nodes, n, allowed, fpair, fadj, b) {
                return true;
            }
            seq.pop();
            visited[v] = false;
        }
        false
    }

    let mut seq = vec![a];
    let mut visited = vec![false; n];
    visited[a] = true;
    let mut nodes = 0u64;
    if extend(
        &mut seq,
        &mut visited,
        &mut nodes,
        n,
        allowed,
        fpair,
        fadj,
        b,
    ) {
        Some(seq)
    } else {
        None
    }
}

/// Output of phase one: the partially built graph plus the bookkeeping
/// phase two consumes.
#[derive(Debug, Clone)]
pub struct PhaseState {
    /// Partially built realization: maintained colors are complete
    /// caterpillars; every other color has its legs and its edges at the
    /// densest vertex only.
    pub graph: ColoredGraph,
    /// The input matrix.
    pub matrix: DegreeMatrix,
    /// The column of largest sum (lowest index on ties). Its edges are all
    /// placed during phase one because its share of the complement can be
    /// too small for path routing.
    pub heavy_vertex: usize,
    /// The three rows with the most 1-entries, kept complete in `graph`.
    pub maintained: [usize; 3],
    /// Per row and column: degree still owed (`entry - current degree`).
    pub remaining: Vec<Vec<usize>>,
    /// Per row: the already-placed edges at `heavy_vertex` joining two
    /// backbone columns of that row. Phase two forces them onto the path.
    pub capping: Vec<Vec<(usize, usize)>>,
    /// Per non-maintained row: the two prescribed backbone path ends.
    pub ends: Vec<Option<(usize, usize)>>,
    /// Trace steps accumulated so far.
    pub trace: Vec<TraceStep>,
}

/// Number of 1-entries in row `r`.
fn leaf_count(m: &DegreeMatrix, r: usize) -> usize {
    m.row(r).iter().filter(|&&d| d == 1).count()
}

/// Lowest column other than `avoid` with sum `2k - 1` whose single
/// 1-entry sits in a non-path row. Returns `(column, row of the 1)`.
fn find_reduction_avoiding(m: &DegreeMatrix, avoid: usize) -> Result<(usize, usize), LargeNError> {
    let k = m.k();
    for (c, &sum) in m.column_sums().iter().enumerate() {
        if c == avoid || sum != 2 * k - 1 {
            continue;
        }
        // Sum 2k - 1 with no common leaves forces the shape: one 1-entry,
        // all other entries exactly 2.
        let r = match (0..k).find(|&r| m.entry(r, c) == 1) {
            Some(r) => r,
            None => continue,
        };
        if !m.is_path_row(r) {
            return Ok((c, r));
        }
    }
    Err(LargeNError::Internal(
        "no reduction column distinct from the densest vertex".into(),
    ))
}

/// Run phase one: reduce to an all-path matrix avoiding the densest
/// column, pack paths, replay the reductions maintaining three colors, and
/// record the leg/end/capping bookkeeping for the rest.
pub fn phase_one(m: &DegreeMatrix) -> Result<PhaseState, LargeNError> {
    let n = m.n();
    let k = m.k();
    if k < 5 {
        return Err(LargeNError::BadInput(format!(
            "the dense construction requires at least 5 rows, got {k}"
        )));
    }
    let floor = (22 * k - 11).max(396);
    if n < floor {
        return Err(LargeNError::BadInput(format!(
            "the dense construction requires n >= max(22k - 11, 396) = {floor}, got n = {n}"
        )));
    }
    census(m)?;

    let column_sums = m.column_sums();
    let v = (0..n)
        .max_by_key(|&c| (column_sums[c], std::cmp::Reverse(c)))
        .expect("n >= 1");

    // Reduction chain down to an all-path matrix, never deleting column v.
    let mut cur = m.clone();
    let mut ids: Vec<usize> = (0..n).collect();
    let mut chain: Vec<(usize, usize, usize)> = Vec::new(); // (leaf column, row, target)
    let mut guard = 0usize;
    while !(0..k).all(|r| cur.is_path_row(r)) {
        guard += 1;
        if guard > n * k + 8 {
            return Err(LargeNError::Internal(
                "reduction chain failed to terminate".into(),
            ));
        }
        let (c, r) = find_reduction_avoiding(&cur, ids.iter().position(|&g| g == v).unwrap())?;
        let j = (0..cur.n())
            .find(|&j| cur.entry(r, j) > 2)
            .ok_or_else(|| internal("reduction row has no entry above 2"))?;
        chain.push((ids[c], r, ids[j]));
        let mut rows: Vec<Vec<usize>> = cur.rows().to_vec();
        rows[r][j] -= 1;
        for row in rows.iter_mut() {
            row.remove(c);
        }
        ids.remove(c);
        cur = DegreeMatrix::new(rows)?;
    }
    let support = ids;
    let n_m = cur.n();

    // Pack the all-path matrix as edge-disjoint Hamiltonian paths and read
    // off each color's path in global labels.
    let packed = walecki_pack(&cur)?;
    let mut paths: Vec<Vec<usize>> = Vec::with_capacity(k);
    for r in 0..k {
        let view = caterpillar_view(&packed, r + 1)?;
        if view.spine.len() != n_m {
            return Err(LargeNError::Internal(format!(
                "packed color {} is not a spanning path",
                r + 1
            )));
        }
        paths.push(view.spine.iter().map(|&x| support[x]).collect());
    }

    // Maintained rows: the three with the most leaves (ties by row index).
    let mut by_leaves: Vec<usize> = (0..k).collect();
    by_leaves.sort_by_key(|&r| (std::cmp::Reverse(leaf_count(m, r)), r));
    let mut maintained = [by_leaves[0], by_leaves[1], by_leaves[2]];
    maintained.sort_unstable();

    // Initial edges: full paths for maintained colors; for the others only
    // the two end legs and the edges at v.
    let mut initial: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let add = |set: &mut BTreeSet<(usize, usize, usize)>, color: usize, x: usize, y: usize| {
        set.insert((color, x.min(y), x.max(y)));
    };
    for (r, p) in paths.iter().enumerate() {
        if maintained.contains(&r) {
            for w in p.windows(2) {
                add(&mut initial, r + 1, w[0], w[1]);
            }
        } else {
            add(&mut initial, r + 1, p[0], p[1]);
            add(&mut initial, r + 1, p[n_m - 2], p[n_m - 1]);
            let pos = p
                .iter()
                .position(|&x| x == v)
                .ok_or_else(|| internal("densest vertex missing from a packed path"))?;
            if pos > 0 {
                add(&mut initial, r + 1, p[pos - 1], p[pos]);
            }
            if pos + 1 < n_m {
                add(&mut initial, r + 1, p[pos], p[pos + 1]);
            }
        }
    }
    let mut graph = ColoredGraph::new(n, k);
    for &(color, x, y) in &initial {
        graph.add_edge(x, y, color)?;
    }

    // Replay the chain in reverse. Each step adds the deleted column back
    // as a leg on its target and pulls one edge from each maintained color
    // other than the leg's own row, keeping those colors complete.
    let mut trackers: HashMap<usize, Vec<usize>> =
        maintained.iter().map(|&r| (r, paths[r].clone())).collect();
    for &(u, row, target) in chain.iter().rev() {
        graph.add_edge(u, target, row + 1)?;
        let others: Vec<usize> = maintained.iter().copied().filter(|&r| r != row).collect();
        let spines: Vec<(usize, Vec<usize>)> = others
            .iter()
            .map(|&r| (r + 1, trackers[&r].clone()))
            .collect();
        let matching = find_rainbow_avoiding(&spines, target, others.len())?;
        for &(color, x, y) in &matching.edges {
            let old = graph.remove_edge(x, y)?;
            if old != color {
                return Err(LargeNError::Internal(
                    "pulled edge had an unexpected color".into(),
                ));
            }
            graph.add_edge(x, u, color)?;
            graph.add_edge(u, y, color)?;
            let s = trackers.get_mut(&(color - 1)).expect("maintained tracker");
            let pos = s
                .windows(2)
                .position(|w| (w[0] == x && w[1] == y) || (w[0] == y && w[1] == x))
                .ok_or_else(|| internal("pulled edge is not on the tracked path"))?;
            s.insert(pos + 1, u);
        }
    }

    // Degree ledger: what every color still owes each column.
    let mut remaining = vec![vec![0usize; n]; k];
    for (r, rem_row) in remaining.iter_mut().enumerate() {
        for (w, slot) in rem_row.iter_mut().enumerate() {
            let deg = graph.degree(r + 1, w);
            let ent = m.entry(r, w);
            if deg > ent {
                return Err(LargeNError::Internal(format!(
                    "column {w} exceeds its prescribed degree in row {r}"
                )));
            }
            *slot = ent - deg;
        }
    }
    for &r in &maintained {
        if remaining[r].iter().any(|&x| x != 0) {
            return Err(LargeNError::Internal(format!(
                "maintained row {r} is not a complete caterpillar"
            )));
        }
    }

    // Capping edges: per row, the placed edges at v joining two backbone
    // columns of that row. Prescribed path ends: backbone columns whose
    // capping incidence plus owed degree is exactly 1.
    let mut capping: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; k];
    for r in 0..k {
        if maintained.contains(&r) {
            continue;
        }
        capping[r] = graph
            .edges_of_color(r + 1)
            .into_iter()
            .filter(|&(x, y)| (x == v || y == v) && m.entry(r, x) >= 2 && m.entry(r, y) >= 2)
            .collect();
        let mut cap_inc = vec![0usize; n];
        for &(x, y) in &capping[r] {
            cap_inc[x] += 1;
            cap_inc[y] += 1;
        }
        let backbone: Vec<usize> = (0..n).filter(|&w| m.entry(r, w) >= 2).collect();
        let mut path_ends = Vec::new();
        for &w in &backbone {
            match cap_inc[w] + remaining[r][w] {
                1 => path_ends.push(w),
                2 => {}
                t => {
                    return Err(LargeNError::Internal(format!(
                        "column {w} owes {t} path slots in row {r}; expected 1 or 2"
                    )))
                }
            }
        }
        if path_ends.len() != 2 {
            return Err(LargeNError::Internal(format!(
                "row {r} has {} prescribed path ends; expected 2",
                path_ends.len()
            )));
        }
        ends[r] = Some((path_ends[0], path_ends[1]));
    }

    Ok(PhaseState {
        graph,
        matrix: m.clone(),
        heavy_vertex: v,
        maintained,
        remaining,
        capping,
        ends,
        trace: vec![TraceStep::PhaseOne {
            reductions: chain.len(),
        }],
    })
}

/// Vertices reachable from `start` along the anchor edges in `e_set`.
fn anchor_component(e_set: &[(usize, usize)], start: usize) -> Vec<usize> {
    let mut comp = vec![start];
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &(p, q) in e_set {
            let other = if p == x {
                q
            } else if q == x {
                p
            } else {
                continue;
            };
            if !comp.contains(&other) {
                comp.push(other);
                stack.push(other);
            }
        }
    }
    comp
}

/// Run phase two: complete every non-maintained color by routing a
/// Hamiltonian path through its backbone in the complement of the current
/// graph, honoring the prescribed ends, the capping edges at the densest
/// vertex, and fresh anchor edges for medium-degree vertices.
pub fn phase_two(state: PhaseState) -> Result<(ColoredGraph, Vec<TraceStep>), LargeNError> {
    let PhaseState {
        mut graph,
        matrix,
        heavy_vertex: v,
        maintained,
        remaining,
        capping,
        ends,
        mut trace,
    } = state;
    let n = matrix.n();
    let k = matrix.k();

    let mut order: Vec<usize> = (0..k).filter(|r| !maintained.contains(r)).collect();
    order.sort_by_key(|&r| (n - leaf_count(&matrix, r), r));

    for &r in &order {
        let backbone: Vec<usize> = (0..n).filter(|&w| matrix.entry(r, w) >= 2).collect();
        let b_len = backbone.len();
        if b_len <= 1 {
            if remaining[r].iter().any(|&x| x != 0) {
                return Err(LargeNError::Internal(format!(
                    "row {r} owes degrees but has no backbone to route"
                )));
            }
            continue;
        }
        if 4 * b_len <= 3 * n {
            return Err(LargeNError::Internal(format!(
                "backbone of row {r} has {b_len} of {n} columns; the dense routing needs more than 3n/4"
            )));
        }
        let (e0, e1) = ends[r].ok_or_else(|| internal("missing prescribed ends"))?;

        // Current total degrees over all colors.
        let mut tdeg = vec![0usize; n];
        for (_, x, y) in graph.edges() {
            tdeg[x] += 1;
            tdeg[y] += 1;
        }
        for &w in &backbone {
            if w != v && 3 * tdeg[w] >= 2 * n {
                return Err(LargeNError::CensusViolation(format!(
                    "column {w} reached degree {} of {n}; only the densest vertex may",
                    tdeg[w]
                )));
            }
        }
        let mediums: Vec<usize> = backbone
            .iter()
            .copied()
            .filter(|&w| w != v && 6 * tdeg[w] >= n)
            .collect();
        if mediums.len() > 11 {
            return Err(LargeNError::CensusViolation(format!(
                "{} columns reached degree n/6; at most eleven are possible",
                mediums.len()
            )));
        }

        // Anchor every medium vertex with forced edges to low-degree
        // partners so the path search never needs its scarce complement
        // edges: two anchors if interior, one if it is a prescribed end.
        let mut e_set: Vec<(usize, usize)> = capping[r].clone();
        for &w in &mediums {
            let target = if w == e0 || w == e1 { 1 } else { 2 };
            let mut have = e_set.iter().filter(|&&(p, q)| p == w || q == w).count();
            while have < target {
                let mut pick: Option<usize> = None;
                // Prefer partners that are not prescribed ends; an end
                // partner is acceptable only if the anchor chain through w
                // would not then hold both ends.
                for pass in 0..2 {
                    for &u in &backbone {
                        if u == w || u == v || 6 * tdeg[u] >= n {
                            continue;
                        }
                        if graph.pair_used(w, u) {
                            continue;
                        }
                        if e_set.iter().any(|&(p, q)| p == u || q == u) {
                            continue;
                        }
                        let u_is_end = u == e0 || u == e1;
                        if pass == 0 && u_is_end {
                            continue;
                        }
                        if u_is_end {
                            let comp = anchor_component(&e_set, w);
                            let other = if u == e0 { e1 } else { e0 };
                            if comp.contains(&other) {
                                continue;
                            }
                        }
                        pick = Some(u);
                        break;
                    }
                    if pick.is_some() {
                        break;
                    }
                }
                let u = pick.ok_or_else(|| {
                    internal(format!("no anchor partner available for column {w}"))
                })?;
                e_set.push((w, u));
                have += 1;
            }
        }

        // Complement density sentinels: every backbone vertex other than v
        // must keep a large share of the complement available.
        for &w in &backbone {
            if w == v {
                continue;
            }
            let used = backbone
                .iter()
                .filter(|&&x| x != w && graph.pair_used(w, x))
                .count();
            let f = b_len - 1 - used;
            let bound = if 6 * tdeg[w] >= n { n } else { 7 * n };
            if 12 * f + 24 < bound {
                return Err(LargeNError::Internal(format!(
                    "column {w} has only {f} complement edges into the backbone of row {r}"
                )));
            }
        }

        // Route the path in local labels.
        let mut local = vec![usize::MAX; n];
        for (i, &w) in backbone.iter().enumerate() {
            local[w] = i;
        }
        let mut allowed = vec![vec![false; b_len]; b_len];
        for i in 0..b_len {
            for j in (i + 1)..b_len {
                let ok = !graph.pair_used(backbone[i], backbone[j]);
                allowed[i][j] = ok;
                allowed[j][i] = ok;
            }
        }
        let forced_local: Vec<(usize, usize)> =
            e_set.iter().map(|&(p, q)| (local[p], local[q])).collect();
        let path =
            hamiltonian_path_with_forced(b_len, &allowed, (local[e0], local[e1]), &forced_local)
                .ok_or_else(|| internal(format!("no spanning backbone path found for row {r}")))?;

        for w in path.windows(2) {
            let (x, y) = (backbone[w[0]], backbone[w[1]]);
            match graph.color_of(x, y) {
                Some(c) if c == r + 1 => {}
                Some(c) => {
                    return Err(LargeNError::Internal(format!(
                        "path edge ({x}, {y}) already carries color {c}"
                    )))
                }
                None => graph.add_edge(x, y, r + 1)?,
            }
        }
        trace.push(TraceStep::PhaseTwo {
            color: r + 1,
            backbone_len: b_len,
        });
    }

    let report = verify_realization(&matrix, &graph);
    if !report.ok {
        return Err(LargeNError::Internal(
            "final verification of the dense construction failed".into(),
        ));
    }
    Ok((graph, trace))
}

/// Realize a tree degree matrix in the unconditional dense range
/// (`k >= 5`, no common leaves, `n >= max(22k - 11, 396)`).
pub fn realize_large(m: &DegreeMatrix) -> Realization {
    if !m.is_tree_matrix() {
        return Realization::NotExists {
            reason: "some row is not a tree degree row".into(),
        };
    }
    if m.has_common_leaves() {
        return Realization::Unknown {
            reason: "the dense construction requires no common leaves".into(),
        };
    }
    let k = m.k();
    let n = m.n();
    if k < 5 || n < (22 * k - 11).max(396) {
        return Realization::Unknown {
            reason: format!(
                "outside the guaranteed dense range: need k >= 5 and n >= max(22k - 11, 396), got k = {k}, n = {n}"
            ),
        };
    }
    match phase_one(m).and_then(phase_two) {
        Ok((graph, trace)) => Realization::Exists { graph, trace },
        Err(e) => Realization::Unknown {
            reason: e.to_string(),
        },
    }
}
