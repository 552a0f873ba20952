//! Exhaustive search oracle and instance generators.
//!
//! The oracle decides small instances by backtracking over all caterpillar
//! packings, independently of every constructive module: for each row it
//! enumerates backbone orderings of the vertices of degree at least 2 and
//! all assignments of the degree-1 vertices to backbone slots, using each
//! vertex pair at most once across all colors. It shares no logic with the
//! constructions it corroborates.

use crate::model::{canonical_form, ColoredGraph, DegreeMatrix};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance budget exceeded: k*n = {product} > {limit}")]
    BudgetExceeded { product: usize, limit: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
}

/// Resource limits for the exhaustive search. `None` means unlimited.
#[derive(Debug, Clone, Default)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
    /// Prune reversed backbone orderings (they describe the same tree).
    pub symmetry_pruning: bool,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits {
            max_nodes: None,
            max_millis: None,
            symmetry_pruning: true,
        }
    }
}

#[derive(Debug)]
pub enum OracleOutcome {
    Exists(ColoredGraph),
    NotExists,
    /// The search hit a resource limit before finishing.
    Unknown(String),
}

#[derive(Debug)]
pub struct OracleRun {
    pub outcome: OracleOutcome,
    /// Search nodes visited.
    pub nodes: u64,
    pub elapsed_ms: u64,
}

struct Search<'a> {
    m: &'a DegreeMatrix,
    n: usize,
    k: usize,
    limits: &'a SearchLimits,
    start: Instant,
    nodes: u64,
    aborted: Option<String>,
    /// Vertex pairs used so far, across all colors.
    used: Vec<Vec<bool>>,
    /// Total degree used so far at each vertex, across all colors.
    total_deg: Vec<usize>,
    /// `future[r][v]` = degree still owed to vertex `v` by rows `r..`.
    future: Vec<Vec<usize>>,
    /// Edge stack `(u, v, color)` for the partial packing.
    edges: Vec<(usize, usize, usize)>,
}

impl<'a> Search<'a> {
    fn new(m: &'a DegreeMatrix, limits: &'a SearchLimits) -> Self {
        let n = m.n();
        let k = m.k();
        let mut future = vec![vec![0usize; n]; k + 1];
        for r in (0..k).rev() {
            let (head, tail) = future.split_at_mut(r + 1);
            for ((slot, &below), &d) in head[r].iter_mut().zip(&tail[0]).zip(m.row(r)) {
                *slot = below + d;
            }
        }
        Search {
            m,
            n,
            k,
            limits,
            start: Instant::now(),
            nodes: 0,
            aborted: None,
            used: vec![vec![false; n]; n],
            total_deg: vec![0; n],
            future,
            edges: Vec::new(),
        }
    }

    /// Count a search node; check the limits periodically. Returns false
    /// once the search must abort.
    fn tick(&mut self) -> bool {
        if self.aborted.is_some() {
            return false;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(max) = self.limits.max_nodes {
                if self.nodes > max {
                    self.aborted = Some(format!("node budget of {max} exhausted"));
                    return false;
                }
            }
            if let Some(ms) = self.limits.max_millis {
                if self.start.elapsed().as_millis() > u128::from(ms) {
                    self.aborted = Some(format!("time budget of {ms} ms exhausted"));
                    return false;
                }
            }
        }
        true
    }

    fn add(&mut self, u: usize, v: usize, color: usize) {
        self.used[u][v] = true;
        self.used[v][u] = true;
        self.total_deg[u] += 1;
        self.total_deg[v] += 1;
        self.edges.push((u, v, color));
    }

    fn pop(&mut self) {
        let (u, v, _) = self.edges.pop().expect("edge stack underflow");
        self.used[u][v] = false;
        self.used[v][u] = false;
        self.total_deg[u] -= 1;
        self.total_deg[v] -= 1;
    }

    /// Every vertex must still have room for all degrees owed by rows
    /// `next..` within a simple graph.
    fn capacity_ok(&self, next: usize) -> bool {
        (0..self.n).all(|v| (self.n - 1) - self.total_deg[v] >= self.future[next][v])
    }

    fn solve_color(&mut self, r: usize) -> bool {
        if r == self.k {
            return true;
        }
        let d = self.m.row(r);
        let backbone: Vec<usize> = (0..self.n).filter(|&v| d[v] >= 2).collect();
        let leaves: Vec<usize> = (0..self.n).filter(|&v| d[v] == 1).collect();
        match backbone.len() {
            0 => {
                // A tree row of all 1s forces n = 2: a single edge.
                if !self.tick() {
                    return false;
                }
                let (u, v) = (leaves[0], leaves[1]);
                if self.used[u][v] {
                    return false;
                }
                self.add(u, v, r + 1);
                if self.capacity_ok(r + 1) && self.solve_color(r + 1) {
                    return true;
                }
                self.pop();
                false
            }
            1 => {
                // A star: all leaves attach to the unique center.
                if !self.tick() {
                    return false;
                }
                let center = backbone[0];
                if leaves.iter().any(|&w| self.used[center][w]) {
                    return false;
                }
                for &w in &leaves {
                    self.add(center, w, r + 1);
                }
                if self.capacity_ok(r + 1) && self.solve_color(r + 1) {
                    return true;
                }
                for _ in &leaves {
                    self.pop();
                }
                false
            }
            _ => {
                let mut seq = Vec::with_capacity(backbone.len());
                let mut in_seq = vec![false; backbone.len()];
                self.place_backbone(r, &backbone, &leaves, &mut seq, &mut in_seq)
            }
        }
    }

    /// Enumerate backbone orderings; consecutive vertices must form unused
    /// pairs. With symmetry pruning, only orderings whose first vertex is
    /// smaller than the last are explored, since a reversed ordering yields
    /// the same tree.
    fn place_backbone(
        &mut self,
        r: usize,
        backbone: &[usize],
        leaves: &[usize],
        seq: &mut Vec<usize>,
        in_seq: &mut Vec<bool>,
    ) -> bool {
        if seq.len() == backbone.len() {
            let mut caps: Vec<usize> = seq
                .iter()
                .enumerate()
                .map(|(pos, &b)| {
                    let internal = if pos == 0 || pos == seq.len() - 1 {
                        1
                    } else {
                        2
                    };
                    self.m.entry(r, b) - internal
                })
                .collect();
            let order = seq.clone();
            return self.place_leaves(r, &order, leaves, 0, &mut caps);
        }
        if !self.tick() {
            return false;
        }
        let placing_last = seq.len() == backbone.len() - 1;
        for (i, &v) in backbone.iter().enumerate() {
            if in_seq[i] {
                continue;
            }
            if let Some(&head) = seq.last() {
                if self.used[head][v] {
                    continue;
                }
                if placing_last && self.limits.symmetry_pruning && v < seq[0] {
                    continue;
                }
                self.add(head, v, r + 1);
            }
            seq.push(v);
            in_seq[i] = true;
            if self.place_backbone(r, backbone, leaves, seq, in_seq) {
                return true;
            }
            in_seq[i] = false;
            seq.pop();
            if !seq.is_empty() {
                self.pop();
            }
            if self.aborted.is_some() {
                return false;
            }
        }
        false
    }

    /// Assign leaves (in ascending vertex order) to backbone slots with
    /// remaining capacity.
    fn place_leaves(
        &mut self,
        r: usize,
        seq: &[usize],
        leaves: &[usize],
        idx: usize,
        caps: &mut Vec<usize>,
    ) -> bool {
        if idx == leaves.len() {
            return self.capacity_ok(r + 1) && self.solve_color(r + 1);
        }
        if !self.tick() {
            return false;
        }
        let leaf = leaves[idx];
        for pos in 0..seq.len() {
            if caps[pos] == 0 || self.used[seq[pos]][leaf] {
                continue;
            }
            caps[pos] -= 1;
            self.add(seq[pos], leaf, r + 1);
            if self.place_leaves(r, seq, leaves, idx + 1, caps) {
                return true;
            }
            self.pop();
            caps[pos] += 1;
            if self.aborted.is_some() {
                return false;
            }
        }
        false
    }
}

/// Decide an instance by exhaustive search over caterpillar packings.
pub fn exhaustive_realize(m: &DegreeMatrix, limits: &SearchLimits) -> OracleRun {
    let start = Instant::now();
    if !m.is_tree_matrix() {
        return OracleRun {
            outcome: OracleOutcome::NotExists,
            nodes: 0,
            elapsed_ms: start.elapsed().as_millis() as u64,
        };
    }
    let mut search = Search::new(m, limits);
    let outcome = if !search.capacity_ok(0) {
        OracleOutcome::NotExists
    } else if search.solve_color(0) {
        let mut g = ColoredGraph::new(m.n(), m.k());
        for &(u, v, c) in &search.edges {
            g.add_edge(u, v, c)
                .expect("search invariant: pairs are used once");
        }
        OracleOutcome::Exists(g)
    } else if let Some(reason) = search.aborted.take() {
        OracleOutcome::Unknown(reason)
    } else {
        OracleOutcome::NotExists
    };
    OracleRun {
        outcome,
        nodes: search.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

const ENUMERATION_BUDGET: usize = 48;

/// All tree degree matrices with `k` rows and `n` columns, one canonical
/// representative per equivalence class under row and column permutations,
/// in ascending canonical order. With `no_common`, only matrices without
/// common leaf columns are produced.
pub fn enumerate_matrices(
    k: usize,
    n: usize,
    no_common: bool,
) -> Result<Vec<DegreeMatrix>, OracleError> {
    if k == 0 || n < 2 {
        return Err(OracleError::InfeasibleParameters(
            "need k >= 1 and n >= 2".to_string(),
        ));
    }
    if k * n > ENUMERATION_BUDGET {
        return Err(OracleError::BudgetExceeded {
            product: k * n,
            limit: ENUMERATION_BUDGET,
        });
    }
    let target = 2 * n - 2;
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut rem = vec![target; k];

    // Depth-first over columns in non-decreasing lexicographic order; each
    // canonical class has such a representative, and duplicates collapse in
    // the canonical set.
    fn fill_column(
        k: usize,
        n: usize,
        no_common: bool,
        cols: &mut Vec<Vec<usize>>,
        rem: &mut Vec<usize>,
        seen: &mut BTreeSet<Vec<Vec<usize>>>,
    ) {
        let placed = cols.len();
        if placed == n {
            let rows: Vec<Vec<usize>> = (0..k)
                .map(|r| cols.iter().map(|col| col[r]).collect())
                .collect();
            let m = DegreeMatrix::new(rows).expect("enumeration keeps shapes valid");
            let (canon, _, _) = canonical_form(&m);
            seen.insert(canon.rows().to_vec());
            return;
        }
        let cols_left = n - placed;
        // Row-sum feasibility for the remaining columns.
        if rem
            .iter()
            .any(|&left| left < cols_left || left > cols_left * (n - 1))
        {
            return;
        }
        let prev = if placed > 0 {
            Some(cols[placed - 1].clone())
        } else {
            None
        };
        let mut col = vec![0usize; k];
        fill_entry(k, n, no_common, 0, true, &prev, &mut col, cols, rem, seen);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_entry(
        k: usize,
        n: usize,
        no_common: bool,
        r: usize,
        tight: bool,
        prev: &Option<Vec<usize>>,
        col: &mut Vec<usize>,
        cols: &mut Vec<Vec<usize>>,
        rem: &mut Vec<usize>,
        seen: &mut BTreeSet<Vec<Vec<usize>>>,
    ) {
        if r == k {
            cols.push(col.clone());
            fill_column(k, n, no_common, cols, rem, seen);
            cols.pop();
            return;
        }
        let cols_left = n - cols.len();
        let low = match (tight, prev) {
            (true, Some(p)) => p[r],
            _ => 1,
        };
        for e in low.max(1)..=(n - 1) {
            if e > rem[r] {
                break;
            }
            let after = rem[r] - e;
            if after < cols_left - 1 || after > (cols_left - 1) * (n - 1) {
                continue;
            }
            if no_common && e == 1 && col[..r].contains(&1) {
                continue;
            }
            col[r] = e;
            rem[r] -= e;
            let still_tight = tight && prev.as_ref().is_some_and(|p| e == p[r]);
            fill_entry(
                k,
                n,
                no_common,
                r + 1,
                still_tight,
                prev,
                col,
                cols,
                rem,
                seen,
            );
            rem[r] += e;
        }
        col[r] = 0;
    }

    fill_column(k, n, no_common, &mut cols, &mut rem, &mut seen);
    Ok(seen
        .into_iter()
        .map(|rows| DegreeMatrix::new(rows).expect("canonical rows are valid"))
        .collect())
}

/// A reproducible pseudo-random tree degree matrix. Every row has at least
/// two 1-entries (leaf columns); without `allow_common`, leaf columns are
/// globally distinct, which requires `n >= 2k`.
pub fn random_matrix(
    k: usize,
    n: usize,
    seed: u64,
    allow_common: bool,
) -> Result<DegreeMatrix, OracleError> {
    if k == 0 || n < 2 {
        return Err(OracleError::InfeasibleParameters(
            "need k >= 1 and n >= 2".to_string(),
        ));
    }
    if !allow_common && n < 2 * k {
        return Err(OracleError::InfeasibleParameters(format!(
            "distinct leaf columns need n >= 2k, got n = {n}, k = {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    let mut rows = Vec::with_capacity(k);
    for r in 0..k {
        if n == 2 {
            rows.push(vec![1, 1]);
            continue;
        }
        // Leaf count: 2 plus a capped geometric surplus.
        let cap = if allow_common {
            n - 1
        } else {
            (pool.len() - 2 * (k - 1 - r)).min(n - 1)
        };
        let mut leaf_count = 2;
        while leaf_count < cap && rng.random_bool(0.35) {
            leaf_count += 1;
        }
        let leaf_cols: Vec<usize> = if allow_common {
            sample(&mut rng, n, leaf_count).iter().collect()
        } else {
            let picked = sample(&mut rng, pool.len(), leaf_count);
            let chosen: Vec<usize> = picked.iter().map(|i| pool[i]).collect();
            pool.retain(|c| !chosen.contains(c));
            chosen
        };
        let mut row = vec![2usize; n];
        for &c in &leaf_cols {
            row[c] = 1;
        }
        let backbone: Vec<usize> = (0..n).filter(|c| !leaf_cols.contains(c)).collect();
        let mut extra = leaf_count - 2;
        if extra > 0 {
            debug_assert!(!backbone.is_empty());
            if rng.random_bool(0.5) {
                // Concentrate the surplus on few columns.
                while extra > 0 {
                    let c = backbone[rng.random_range(0..backbone.len())];
                    let room = (n - 1) - row[c];
                    let take = room.min(extra);
                    row[c] += take;
                    extra -= take;
                }
            } else {
                // Spread it one unit at a time.
                while extra > 0 {
                    let c = backbone[rng.random_range(0..backbone.len())];
                    if row[c] < n - 1 {
                        row[c] += 1;
                        extra -= 1;
                    }
                }
            }
        }
        rows.push(row);
    }
    let m = DegreeMatrix::new(rows).expect("generated rows have valid shape");
    debug_assert!(m.is_tree_matrix());
    Ok(m)
}
