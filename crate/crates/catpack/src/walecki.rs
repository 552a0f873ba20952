//! Edge-disjoint packing of Hamiltonian paths with prescribed leaf columns,
//! after Walecki's decomposition of the complete graph into zigzag paths.
//!
//! For a matrix whose rows are all path rows with pairwise distinct leaf
//! columns, color `r + 1` follows the zigzag `i, i+1, i-1, i+2, i-2, ...`
//! (1-based labels, wrapped into `1..=n`, `i = r + 1`). Every edge of the
//! zigzag for start `i` has endpoint sum congruent to `2i` or `2i + 1`
//! modulo `n`, so distinct starts `1..=k` with `k <= n/2` never share an
//! edge. A vertex relabeling then moves the canonical path ends onto the
//! prescribed leaf columns.

use crate::model::{ColoredGraph, DegreeMatrix};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WaleckiError {
    #[error("row {0} is not a path degree row")]
    NotAllPaths(usize),
    #[error("two rows share a leaf column; leaf columns must be distinct")]
    CommonLeaves,
    #[error("need at least 2k columns, got n = {n} for k = {k}")]
    TooFewColumns { k: usize, n: usize },
}

/// The canonical zigzag vertex sequence for 0-based start `r` on `n`
/// vertices: `r, r+1, r-1, r+2, r-2, ...` wrapped modulo `n`.
fn zigzag(r: usize, n: usize) -> Vec<usize> {
    let wrap = |x: isize| -> usize { x.rem_euclid(n as isize) as usize };
    let mut seq = Vec::with_capacity(n);
    seq.push(r);
    let mut t = 1isize;
    while seq.len() < n {
        seq.push(wrap(r as isize + t));
        if seq.len() < n {
            seq.push(wrap(r as isize - t));
        }
        t += 1;
    }
    seq
}

/// Pack one Hamiltonian path per row, edge-disjointly, with path ends
/// exactly at each row's two leaf columns.
///
/// Requires every row to be a path row and no two rows to share a leaf
/// column (which forces `n >= 2k`).
pub fn walecki_pack(m: &DegreeMatrix) -> Result<ColoredGraph, WaleckiError> {
    let k = m.k();
    let n = m.n();
    for r in 0..k {
        if !m.is_path_row(r) {
            return Err(WaleckiError::NotAllPaths(r));
        }
    }
    if m.has_common_leaves() {
        return Err(WaleckiError::CommonLeaves);
    }
    if n < 2 * k {
        // Unreachable for valid input: 2k pairwise distinct leaf columns
        // already require n >= 2k. Kept as a defensive check.
        return Err(WaleckiError::TooFewColumns { k, n });
    }

    let half = n.div_ceil(2);
    // Canonical path ends for row r are labels r and r + half (no wrapping:
    // r < k <= floor(n/2) and r + half <= n - 1).
    // tau maps canonical labels to output vertices: slot ends go to the
    // prescribed leaf columns (ascending with ascending), the rest ascending.
    let mut tau = vec![usize::MAX; n];
    let mut slot_is_taken = vec![false; n];
    let mut col_is_leaf = vec![false; n];
    for r in 0..k {
        let leaves = m.leaf_columns(r);
        debug_assert_eq!(leaves.len(), 2);
        tau[r] = leaves[0];
        tau[r + half] = leaves[1];
        slot_is_taken[r] = true;
        slot_is_taken[r + half] = true;
        col_is_leaf[leaves[0]] = true;
        col_is_leaf[leaves[1]] = true;
    }
    let free_slots = (0..n).filter(|&s| !slot_is_taken[s]);
    let free_cols = (0..n).filter(|&c| !col_is_leaf[c]);
    for (s, c) in free_slots.zip(free_cols) {
        tau[s] = c;
    }
    debug_assert!(tau.iter().all(|&x| x != usize::MAX));

    let mut g = ColoredGraph::new(n, k);
    for r in 0..k {
        let seq = zigzag(r, n);
        debug_assert_eq!(seq[0], r);
        debug_assert_eq!(*seq.last().unwrap(), r + half);
        for w in seq.windows(2) {
            g.add_edge(tau[w[0]], tau[w[1]], r + 1)
                .expect("zigzag paths with distinct starts are edge-disjoint");
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{caterpillar_view, verify_realization};

    fn m(rows: &[&[usize]]) -> DegreeMatrix {
        DegreeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_paths_on_four_vertices_canonical() {
        // Leaves at the canonical slots themselves: row 0 at columns 0, 2;
        // row 1 at columns 1, 3 (1-based: 1,3 and 2,4).
        let d = m(&[&[1, 2, 1, 2], &[2, 1, 2, 1]]);
        let g = walecki_pack(&d).unwrap();
        // 1-based color 1 path: 1-2-4-3 ; color 2 path: 2-3-1-4.
        assert_eq!(g.color_of(0, 1), Some(1));
        assert_eq!(g.color_of(1, 3), Some(1));
        assert_eq!(g.color_of(3, 2), Some(1));
        assert_eq!(g.color_of(1, 2), Some(2));
        assert_eq!(g.color_of(2, 0), Some(2));
        assert_eq!(g.color_of(0, 3), Some(2));
        assert!(verify_realization(&d, &g).ok);
    }

    #[test]
    fn single_path_on_two_vertices() {
        let d = m(&[&[1, 1]]);
        let g = walecki_pack(&d).unwrap();
        assert_eq!(g.edges(), vec![(1, 0, 1)]);
    }

    #[test]
    fn leaf_columns_are_respected() {
        // Row 0 must end at columns 2 and 5; row 1 at 0 and 4.
        let d = m(&[&[2, 2, 1, 2, 2, 1], &[1, 2, 2, 2, 1, 2]]);
        let g = walecki_pack(&d).unwrap();
        assert!(verify_realization(&d, &g).ok);
        let v1 = caterpillar_view(&g, 1).unwrap();
        let ends1 = [v1.spine[0], *v1.spine.last().unwrap()];
        assert!(ends1.contains(&2) && ends1.contains(&5));
        let v2 = caterpillar_view(&g, 2).unwrap();
        let ends2 = [v2.spine[0], *v2.spine.last().unwrap()];
        assert!(ends2.contains(&0) && ends2.contains(&4));
    }

    #[test]
    fn rejects_bad_input() {
        let tree = m(&[&[3, 2, 1, 1, 1], &[1, 2, 2, 2, 1]]);
        assert_eq!(walecki_pack(&tree), Err(WaleckiError::NotAllPaths(0)));
        let common = m(&[&[1, 2, 2, 1], &[1, 2, 2, 1]]);
        assert_eq!(walecki_pack(&common), Err(WaleckiError::CommonLeaves));
    }

    #[test]
    fn max_color_count_packs() {
        // k = 4 on n = 8: a full decomposition of K8 into 4 paths.
        let d = m(&[
            &[1, 2, 2, 2, 1, 2, 2, 2],
            &[2, 1, 2, 2, 2, 1, 2, 2],
            &[2, 2, 1, 2, 2, 2, 1, 2],
            &[2, 2, 2, 1, 2, 2, 2, 1],
        ]);
        let g = walecki_pack(&d).unwrap();
        assert!(verify_realization(&d, &g).ok);
        assert_eq!(g.edge_count(), 4 * 7); // uses all C(8,2) = 28 pairs
    }
}
